//! Universal measuring algebras `F(A,B)` and modules `D(M,N)` for
//! finite-dimensional algebras, computed exactly as finitely presented
//! noncommutative algebras.

pub mod exactnum;
pub mod text;
pub mod finalg;
pub mod report;
pub mod coalg;
pub mod freealg;
pub mod sweedler;
pub mod extensions;
pub mod modcomod;
