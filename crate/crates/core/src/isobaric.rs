//! Isobaric sums over the nine atoms `sigma_0..sigma_8`.
//!
//! Atoms are opaque: each carries a degree and the polynomial `h_i` giving
//! its Dirichlet coefficient `c_n(sigma_i) = h_i(a_n, b_n)`.

use std::ops::Add;

use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::golden::GoldenRational;
use crate::icosagroup::{h_poly, ConjClassTable, DIMENSIONS, NUM_CLASSES};

pub const ATOM_NAMES: [&str; NUM_CLASSES] = [
    "1",
    "pi",
    "pi'",
    "sym2 pi",
    "sym2 pi'",
    "pi x pi'",
    "sym3 pi",
    "sym4 pi",
    "pi x sym2 pi'",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomInfo {
    pub index: usize,
    pub degree: u64,
    pub name: &'static str,
    pub h: BiPoly,
}

pub fn atoms() -> Vec<AtomInfo> {
    (0..NUM_CLASSES)
        .map(|i| AtomInfo {
            index: i,
            degree: DIMENSIONS[i],
            name: ATOM_NAMES[i],
            h: h_poly(i).expect("index in range"),
        })
        .collect()
}

/// A formal isobaric sum, `mult[i]` copies of `sigma_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct IsobaricRep {
    pub mult: [u64; NUM_CLASSES],
}

impl IsobaricRep {
    pub fn atom(i: usize) -> Result<Self> {
        if i >= NUM_CLASSES {
            return Err(Error::OutOfRange {
                index: i,
                expected: "0..=8",
            });
        }
        let mut mult = [0; NUM_CLASSES];
        mult[i] = 1;
        Ok(Self { mult })
    }

    pub fn degree(&self) -> u64 {
        self.mult.iter().zip(DIMENSIONS).map(|(m, d)| m * d).sum()
    }

    /// Constituents with repetition, by atom name.
    pub fn constituents(&self) -> Vec<&'static str> {
        self.mult
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(ATOM_NAMES[i], m as usize))
            .collect()
    }
}

impl Add for &IsobaricRep {
    type Output = IsobaricRep;
    fn add(self, rhs: &IsobaricRep) -> IsobaricRep {
        let mut mult = self.mult;
        for (m, r) in mult.iter_mut().zip(rhs.mult) {
            *m += r;
        }
        IsobaricRep { mult }
    }
}

/// `Pi_k`, with `m_{k,i}` copies of each `sigma_i`.
pub fn build_pi(k: usize) -> Result<IsobaricRep> {
    let m = ConjClassTable::standard().multiplicities(k)?;
    Ok(IsobaricRep { mult: m.m })
}

/// `c_n(sigma_i) = h_i(a, b)`.
pub fn coeff_atom(i: usize, a: &GoldenRational, b: &GoldenRational) -> Result<GoldenRational> {
    Ok(h_poly(i)?.eval(a, b))
}

/// `c_n(Pi) = sum_i mult_i h_i(a, b)`.
pub fn coeff_rep(rep: &IsobaricRep, a: &GoldenRational, b: &GoldenRational) -> GoldenRational {
    rep.mult
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .fold(GoldenRational::zero(), |acc, (i, &m)| {
            let h = coeff_atom(i, a, b).expect("index in range");
            acc + &(&GoldenRational::from(m as i64) * &h)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::pk;
    use crate::golden::a_set;

    #[test]
    fn atom_degrees_match_identity_values() {
        for atom in atoms() {
            let at_identity = atom.h.eval(&2.into(), &2.into());
            assert_eq!(
                at_identity,
                GoldenRational::from(atom.degree as i64),
                "{}",
                atom.name
            );
        }
    }

    #[test]
    fn small_pi() {
        let p1 = build_pi(1).unwrap();
        assert_eq!(p1, IsobaricRep::atom(1).unwrap());
        assert_eq!(p1.degree(), 2);
        let p5 = build_pi(5).unwrap();
        assert_eq!(p5.constituents(), vec!["pi x sym2 pi'"]);
        assert_eq!(p5.degree(), 6);
        assert_eq!(build_pi(8).unwrap().degree(), 9);
    }

    #[test]
    fn atom_coefficients() {
        let (phi, phibar) = (GoldenRational::phi(), GoldenRational::phibar());
        assert_eq!(coeff_atom(5, &phi, &phibar).unwrap(), (-1).into());
        assert!(coeff_atom(0, &7.into(), &3.into()).unwrap().is_one());
        assert!(coeff_atom(7, &0.into(), &0.into()).unwrap().is_one());
        assert!(matches!(coeff_atom(9, &phi, &phi), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn rep_coefficients() {
        let two = GoldenRational::from(2);
        assert_eq!(coeff_rep(&build_pi(5).unwrap(), &two, &two), 6.into());
        assert_eq!(
            coeff_rep(
                &build_pi(2).unwrap(),
                &GoldenRational::phi(),
                &GoldenRational::phibar()
            ),
            GoldenRational::phi()
        );
        assert!(coeff_rep(&build_pi(0).unwrap(), &3.into(), &(-5).into()).is_one());
    }

    #[test]
    fn pi_k_matches_symmetric_power() {
        for k in 0..=20 {
            let rep = build_pi(k).unwrap();
            assert_eq!(rep.degree(), k as u64 + 1);
            for alpha in a_set() {
                let a: GoldenRational = alpha.clone().into();
                assert_eq!(coeff_rep(&rep, &a, &a.conj()), pk(k).eval(&a, &0.into()), "k={k}");
            }
        }
    }

    #[test]
    fn coefficients_are_additive() {
        let (a, b) = (GoldenRational::from(3), GoldenRational::phi());
        let (r, s) = (build_pi(4).unwrap(), build_pi(7).unwrap());
        assert_eq!(
            coeff_rep(&(&r + &s), &a, &b),
            coeff_rep(&r, &a, &b) + coeff_rep(&s, &a, &b)
        );
    }
}
