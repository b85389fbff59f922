use crate::exactnum::Scalar;
use crate::finalg::FinAlgebra;
use crate::freealg::NcPoly;

use super::{SweedlerError, SweedlerPresentation};

/// A named identity of `F(A,A)`, `A = conjugation_algebra`, stated as
/// `poly = 0`.
#[derive(Debug, Clone)]
pub struct CodaIdentity {
    pub text: String,
    pub poly: NcPoly,
}

// Basis order of the conjugation algebra.
const NAMES: [&str; 4] = ["1", "x", "J", "xJ"];

/// The identities from `η(x)² = -1`, `η(J)² = 1` and `{η(x), η(J)} = 0`,
/// written with `f_b` (resp. `g_b`) for the coefficient of `b` in `η(x)`
/// (resp. `η(J)`).
pub fn coda_identities(f: &SweedlerPresentation) -> Result<Vec<CodaIdentity>, SweedlerError> {
    let conj = FinAlgebra::conjugation_algebra(f.a().field());
    if !f.is_endomorphic() || !f.a().same_structure(&conj) {
        return Err(SweedlerError::Input("coda identities live in F(A,A) for the conjugation algebra".into()));
    }
    let var = |family: char, b: &str| -> NcPoly {
        let i = if family == 'f' { 1 } else { 2 };
        f.g(i, NAMES.iter().position(|n| *n == b).expect("basis name"))
    };
    let anti = |p: &NcPoly, q: &NcPoly| p.mul(q).add(&q.mul(p));
    let comm = |p: &NcPoly, q: &NcPoly| p.mul(q).sub(&q.mul(p));
    let sq = |p: &NcPoly| p.mul(p);
    let mut out = Vec::new();
    for (fam, rhs) in [('f', -1i64), ('g', 1)] {
        let v = |b: &str| var(fam, b);
        let lhs = sq(&v("1")).sub(&sq(&v("x"))).add(&sq(&v("J"))).add(&sq(&v("xJ")));
        out.push(CodaIdentity {
            text: format!("{rhs} = {fam}_1^2 - {fam}_x^2 + {fam}_J^2 + {fam}_xJ^2"),
            poly: lhs.sub(&NcPoly::constant(Scalar::int(rhs))),
        });
        for (a, b, c) in [("x", "xJ", "J"), ("J", "xJ", "x"), ("xJ", "x", "J")] {
            out.push(CodaIdentity {
                text: format!("0 = {{{fam}_1,{fam}_{a}}} + [{fam}_{b},{fam}_{c}]"),
                poly: anti(&v("1"), &v(a)).add(&comm(&v(b), &v(c))),
            });
        }
    }
    let (fv, gv) = (|b: &str| var('f', b), |b: &str| var('g', b));
    out.push(CodaIdentity {
        text: "0 = {f_1,g_1} - {f_x,g_x} + {f_J,g_J} + {f_xJ,g_xJ}".into(),
        poly: anti(&fv("1"), &gv("1"))
            .sub(&anti(&fv("x"), &gv("x")))
            .add(&anti(&fv("J"), &gv("J")))
            .add(&anti(&fv("xJ"), &gv("xJ"))),
    });
    for (a, b, c) in [("x", "xJ", "J"), ("J", "xJ", "x"), ("xJ", "x", "J")] {
        out.push(CodaIdentity {
            text: format!("0 = {{f_1,g_{a}}} + {{g_1,f_{a}}} + [f_{b},g_{c}] + [g_{b},f_{c}]"),
            poly: anti(&fv("1"), &gv(a))
                .add(&anti(&gv("1"), &fv(a)))
                .add(&comm(&fv(b), &gv(c)))
                .add(&comm(&gv(b), &fv(c))),
        });
    }
    Ok(out)
}
