//! Exact verification toolkit for Hecke eigenvalues of icosahedral type.
//!
//! The crate re-derives, by finite exact computation, the algebraic content
//! behind the value distribution of Hecke eigenvalues lying in `Z[phi]`:
//!
//! * [`golden`]: arithmetic in `Z[phi]` and `Q(phi)`, Galois conjugation, norms
//!   and the nine-element set `A`.
//! * [`bipoly`]: sparse polynomials in `x, y` over `Q(phi)` and the
//!   symmetric-power polynomials `P_k`.
//! * [`rescalc`]: the residue functional `r` on polynomials of degree at most 8
//!   and the densities `r(f_alpha) / f_alpha(alpha, alpha^tau)`.
//! * [`identities`]: the ledger of polynomial identities and inequalities.
//! * [`icosagroup`]: brute-force `SL(2, F_5)`, its character table and
//!   symmetric-power multiplicities.
//! * [`isobaric`]: the isobaric sums `Pi_k` over the nine atoms.
//! * [`frobsim`]: a seeded simulator of eigenvalue streams and von Mangoldt
//!   partial sums.
//! * [`expr`] and [`cli`]: the polynomial expression parser and the command
//!   line front end.

pub mod bipoly;
pub mod cli;
pub mod error;
pub mod expr;
pub mod frobsim;
pub mod golden;
pub mod icosagroup;
pub mod identities;
pub mod isobaric;
pub mod rescalc;
pub mod verify;

pub use bipoly::{pk, pk_product, pk_y, tk, to_p_basis, BiPoly, PBasisVector, Var};
pub use error::{Error, Result};
pub use expr::parse_poly;
pub use golden::{a_set, GoldenInt, GoldenRational};
pub use icosagroup::{ConjClassTable, GroupElement, MultiplicityVector};
pub use isobaric::IsobaricRep;
pub use rescalc::{BaseFlags, RFunctional};
