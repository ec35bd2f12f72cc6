//! Ledger of the explicit polynomial identities and inequalities used in the
//! residue argument, each checked by exact expansion.
//!
//! Equalities pass when `lhs - rhs` expands to the zero polynomial. The
//! pointwise entries add a finite exact check on top (a rational grid, a
//! lattice of golden integers, factor division or sign checks).

use serde::Serialize;

use crate::bipoly::{pk, pk_y, BiPoly, Var};
use crate::error::{Error, Result};
use crate::golden::{a_set, GoldenInt, GoldenRational};
use crate::rescalc::make_f_alpha;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    Equality,
    PointwiseInequality,
}

/// Extra finite check attached to a ledger entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointwiseCheck {
    None,
    /// `128(x^8 + y^8) >= (x - y)^8` on a grid, tight on `y = -x`.
    Bound128,
    /// `F(beta, beta^tau) = 25 v^2 (v^2 - 1) >= 0` on a lattice of `beta`.
    GoldenLattice,
    /// `lhs / rhs` is exactly 1 as univariate division in `x`.
    QuotientIsOne,
    /// Vanishing and sign pattern of the family `f_alpha`.
    FAlphaSigns,
}

#[derive(Clone, Debug)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub location: &'static str,
    pub kind: IdentityKind,
    pub lhs: BiPoly,
    pub rhs: BiPoly,
    pub check: PointwiseCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub id: &'static str,
    pub pass: bool,
    pub location: &'static str,
    #[serde(skip)]
    pub witness: BiPoly,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

fn x() -> BiPoly {
    BiPoly::x()
}

fn y() -> BiPoly {
    BiPoly::y()
}

fn c(n: i64) -> BiPoly {
    BiPoly::int(n)
}

/// `F = (x - y)^2 ((x - y)^2 - 5)`.
pub fn quartic_f() -> BiPoly {
    let d2 = (x() - y()).pow(2);
    &d2 * (&d2 - c(5))
}

/// `H = (xy + 1) x^2 (x^2 - 1)(x^2 - 4)`, which vanishes exactly on the
/// tempered values.
pub fn octic_h() -> BiPoly {
    (x() * y() + c(1)) * x().pow(2) * (x().pow(2) - c(1)) * (x().pow(2) - c(4))
}

/// The `P`-basis form of `F`, with the coefficient of `P_2(x) P_2(y)` as a
/// parameter (6 in the true identity).
pub fn quartic_f_p_form(middle: i64) -> BiPoly {
    pk(4) - c(4) * pk(3) * y() + c(middle) * pk(2) * pk_y(2) - c(4) * x() * pk_y(3) + pk_y(4) + c(4) * pk(2)
        - c(6) * x() * y()
        + c(4) * pk_y(2)
}

fn sqrt5() -> BiPoly {
    BiPoly::constant(GoldenInt::sqrt5().into())
}

fn half() -> GoldenRational {
    GoldenRational::from_parts(1, 0, 2).expect("nonzero")
}

/// Every ledger entry, `I1` to `I12`.
pub fn ledger() -> Vec<IdentityRecord> {
    use IdentityKind::*;
    use PointwiseCheck as P;
    let f = quartic_f();
    let d = x() - y();
    let rec = |id, location, kind, lhs, rhs, check| IdentityRecord {
        id,
        location,
        kind,
        lhs,
        rhs,
        check,
    };

    // I2: substitute x = (u + v sqrt5)/2, y = (u - v sqrt5)/2 with (u, v) in the (x, y) slots
    let xs = (x() + y() * sqrt5()).scale(&half());
    let ys = (x() - y() * sqrt5()).scale(&half());
    let i2_lhs = f.compose(&xs, &ys);
    let i2_rhs = c(25) * y().pow(2) * (y().pow(2) - c(1));

    let i4_rhs = c(20) - d.pow(2) * &f + pk(2) * pk(4) - c(6) * pk(3) * y() * pk(2)
        + c(15) * pk(4) * pk_y(2)
        + c(15) * pk(2) * pk_y(4)
        - c(6) * x() * pk_y(2) * pk_y(3)
        + pk_y(2) * pk_y(4)
        + c(14) * pk(4)
        - c(38) * pk(3) * y()
        + c(60) * pk(2) * pk_y(2)
        - c(38) * x() * pk_y(3)
        + c(14) * pk_y(4)
        + c(38) * pk(2)
        - c(48) * x() * y()
        + c(38) * pk_y(2);

    vec![
        rec(
            "I1",
            "F = (x-y)^2((x-y)^2-5) in the P-basis",
            Equality,
            f.clone(),
            quartic_f_p_form(6),
            P::None,
        ),
        rec(
            "I2",
            "F((u+v*sqrt5)/2, (u-v*sqrt5)/2) = 25v^2(v^2-1)",
            Equality,
            i2_lhs,
            i2_rhs,
            P::None,
        ),
        rec(
            "I3",
            "(xy)^2 = (P_2(x)+1)(P_2(y)+1)",
            Equality,
            (x() * y()).pow(2),
            pk(2) * pk_y(2) + pk(2) + pk_y(2) + c(1),
            P::None,
        ),
        rec(
            "I4",
            "20 P_3(x)P_3(y) = 20 - (x-y)^2 F(x,y) + ...",
            Equality,
            c(20) * pk(3) * pk_y(3),
            i4_rhs,
            P::None,
        ),
        rec(
            "I5",
            "xP_2(y) * yP_2(x) = P_3(x)P_3(y) + xP_3(y) + yP_3(x) + xy",
            Equality,
            x() * pk_y(2) * y() * pk(2),
            pk(3) * pk_y(3) + x() * pk_y(3) + y() * pk(3) + x() * y(),
            P::None,
        ),
        rec(
            "I6",
            "P_4(x) - P_4(y) = (x+y)(P_3(x)-P_3(y)+xP_2(y)-yP_2(x))",
            Equality,
            pk(4) - pk_y(4),
            (x() + y()) * (pk(3) - pk_y(3) + x() * pk_y(2) - y() * pk(2)),
            P::None,
        ),
        rec(
            "I7",
            "x^2(P_3(x)-P_3(y)) + (x^2+xy-1)(xP_2(y)-yP_2(x)) = (x-y)(x^2-x-1)(x^2+x-1)",
            Equality,
            x().pow(2) * (pk(3) - pk_y(3)) + (x().pow(2) + x() * y() - c(1)) * (x() * pk_y(2) - y() * pk(2)),
            &d * (x().pow(2) - x() - c(1)) * (x().pow(2) + x() - c(1)),
            P::None,
        ),
        rec(
            "I8",
            "x^8 = (P_4(x)+3P_2(x)+2)^2",
            Equality,
            x().pow(8),
            (pk(4) + c(3) * pk(2) + c(2)).pow(2),
            P::None,
        ),
        rec(
            "I9",
            "(x-y)^4 F = (x-y)^6((x-y)^2-5) <= (x-y)^8 <= 128(x^8+y^8)",
            PointwiseInequality,
            d.pow(4) * &f,
            d.pow(6) * (d.pow(2) - c(5)),
            P::Bound128,
        ),
        rec(
            "I10",
            "F(a,b) = 25v^2(v^2-1) >= 0, and >= 15(a-b)^2 when v is even",
            PointwiseInequality,
            BiPoly::zero(),
            BiPoly::zero(),
            P::GoldenLattice,
        ),
        rec(
            "I11",
            "P_5(x) - xP_2(x) = x(x^2-1)(x^2-4): roots {0, ±1, ±2}",
            Equality,
            pk(5) - x() * pk(2),
            x() * (x().pow(2) - c(1)) * (x().pow(2) - c(4)),
            P::QuotientIsOne,
        ),
        rec(
            "I12",
            "f_alpha(beta, beta^tau) = 0 off alpha, > 0 at alpha, f_alpha(m,m) >= 0",
            PointwiseInequality,
            BiPoly::zero(),
            BiPoly::zero(),
            P::FAlphaSigns,
        ),
    ]
}

pub fn find(id: &str) -> Result<IdentityRecord> {
    ledger()
        .into_iter()
        .find(|r| r.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

pub fn verify_identity(id: &str) -> Result<IdentityReport> {
    Ok(verify_record(&find(id)?))
}

pub fn verify_all() -> Vec<IdentityReport> {
    ledger().iter().map(verify_record).collect()
}

pub fn verify_record(rec: &IdentityRecord) -> IdentityReport {
    let witness = &rec.lhs - &rec.rhs;
    let mut failures = Vec::new();
    if !witness.is_zero() {
        failures.push(format!("lhs - rhs = {witness}"));
    }
    match rec.check {
        PointwiseCheck::None => {}
        PointwiseCheck::Bound128 => check_bound_128(&mut failures),
        PointwiseCheck::GoldenLattice => check_golden_lattice(&mut failures),
        PointwiseCheck::QuotientIsOne => match rec.lhs.div_rem_univariate(&rec.rhs, Var::X) {
            Ok((q, r)) if q == BiPoly::one() && r.is_zero() => {}
            Ok((q, r)) => failures.push(format!("quotient {q}, remainder {r}")),
            Err(e) => failures.push(e.to_string()),
        },
        PointwiseCheck::FAlphaSigns => check_f_alpha_signs(&mut failures),
    }
    IdentityReport {
        id: rec.id,
        pass: failures.is_empty(),
        location: rec.location,
        witness,
        failures,
    }
}

fn check_bound_128(failures: &mut Vec<String>) {
    let (x, y) = (x(), y());
    let d = &x - &y;
    let gap = c(128) * (x.pow(8) + y.pow(8)) - d.pow(8);
    // grid {-4, -3.9, ..., 4}^2
    let tenth = |k: i64| GoldenRational::from_parts(k, 0, 10).expect("nonzero");
    for a in -40..=40 {
        for b in -40..=40 {
            let v = gap.eval(&tenth(a), &tenth(b));
            if v.signum().is_lt() {
                failures.push(format!("128(x^8+y^8) < (x-y)^8 at ({}, {})", tenth(a), tenth(b)));
            }
        }
    }
    // equality along y = -x
    let on_antidiagonal = gap.compose(&x, &(-&x));
    if !on_antidiagonal.is_zero() {
        failures.push(format!("on y = -x the gap is {on_antidiagonal}, expected 0"));
    }
    // (x-y)^8 - (x-y)^6((x-y)^2-5) = 5(x-y)^6, an even power
    let middle = d.pow(8) - d.pow(6) * (d.pow(2) - c(5));
    if middle != c(5) * d.pow(6) {
        failures.push(format!("(x-y)^8 - (x-y)^4 F = {middle}, expected 5(x-y)^6"));
    }
}

fn check_golden_lattice(failures: &mut Vec<String>) {
    let f = quartic_f();
    for u in -50i64..=50 {
        for v in -50i64..=50 {
            if (u - v).rem_euclid(2) != 0 {
                continue;
            }
            // (u + v sqrt5)/2 = (u - v)/2 + v phi
            let beta = GoldenInt::new((u - v) / 2, v);
            let a: GoldenRational = beta.clone().into();
            let b: GoldenRational = beta.conj().into();
            let value = f.eval(&a, &b);
            let expected = GoldenRational::from(25 * v * v * (v * v - 1));
            if value != expected || value.signum().is_lt() {
                failures.push(format!("F at u={u}, v={v} is {value}, expected {expected}"));
                continue;
            }
            if v % 2 == 0 {
                let diff2 = (&a - &b).pow(2);
                if diff2 != GoldenRational::from(5 * v * v) {
                    failures.push(format!("(a-b)^2 at u={u}, v={v} is {diff2}"));
                }
                let slack = &value - &(&GoldenRational::from(15) * &diff2);
                if slack.signum().is_lt() {
                    failures.push(format!("F < 15(a-b)^2 at u={u}, v={v}"));
                }
            }
        }
    }
}

fn check_f_alpha_signs(failures: &mut Vec<String>) {
    for alpha in a_set() {
        let f = match make_f_alpha(&alpha) {
            Ok(f) => f,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        for beta in a_set() {
            let v = f.eval_int(&beta, &beta.conj());
            let ok = if beta == alpha {
                v.signum().is_gt()
            } else {
                v.is_zero()
            };
            if !ok {
                failures.push(format!("f_{alpha}({beta}, {}) = {v}", beta.conj()));
            }
        }
        for m in -100i64..=100 {
            let v = f.eval(&m.into(), &m.into());
            if v.signum().is_lt() {
                failures.push(format!("f_{alpha}({m}, {m}) = {v} < 0"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rescalc::RFunctional;

    #[test]
    fn every_entry_passes() {
        for report in verify_all() {
            assert!(report.pass, "{}: {:?}", report.id, report.failures);
        }
        assert_eq!(ledger().len(), 12);
    }

    #[test]
    fn perturbed_middle_coefficient_fails() {
        let mut rec = find("I1").unwrap();
        rec.rhs = quartic_f_p_form(7);
        let report = verify_record(&rec);
        assert!(!report.pass);
        assert_eq!(report.witness, -(pk(2) * pk_y(2)));
    }

    #[test]
    fn unknown_identity() {
        assert_eq!(
            verify_identity("I99").unwrap_err(),
            Error::UnknownIdentity("I99".into())
        );
        assert!(verify_identity("i3").unwrap().pass);
    }

    #[test]
    fn i4_recovers_sym3_residue() {
        let r = RFunctional::standard();
        let f = quartic_f();
        let d2 = (x() - y()).pow(2);
        assert!(r.r_poly(&(&d2 * &f)).unwrap().is_zero());
        let rhs = find("I4").unwrap().rhs;
        let r33 = r.r_poly(&rhs).unwrap();
        assert_eq!(r33, 20.into());
        assert!(r.r_poly(&(pk(3) * pk_y(3))).unwrap().is_one());
    }

    #[test]
    fn h_and_f_residues() {
        let r = RFunctional::standard();
        assert!(r.r_poly(&quartic_f()).unwrap().is_zero());
        assert!(r.r_poly(&(x() * y()).pow(2)).unwrap().is_one());
        assert!(r.r_poly(&octic_h()).unwrap().is_zero());
    }
}
