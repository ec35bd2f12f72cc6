//! `SL(2, F_5)` by brute force: the 120 elements, the nine conjugacy classes,
//! the character table generated from one 2-dimensional character, inner
//! products and symmetric-power multiplicities.
//!
//! Classes are listed in a frozen order, each identified by a fixed
//! representative. The 2-dimensional character `chi` is seeded from its
//! value on those representatives; every other irreducible character is
//! `h_i(chi, chi^tau)` for the polynomials of [`h_poly`].

use std::fmt;
use std::sync::OnceLock;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::bipoly::{pk, pk_y, BiPoly};
use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRational};

pub const GROUP_ORDER: usize = 120;
pub const NUM_CLASSES: usize = 9;

/// Dimensions of `chi_0, ..., chi_8`.
pub const DIMENSIONS: [u64; NUM_CLASSES] = [1, 2, 2, 3, 3, 4, 4, 5, 6];

/// Class representatives, row-major `[a, b, c, d]` for `(a b / c d)`.
pub const REPRESENTATIVES: [[u8; 4]; NUM_CLASSES] = [
    [1, 0, 0, 1],
    [4, 0, 0, 4],
    [3, 2, 4, 3],
    [2, 2, 4, 2],
    [2, 0, 0, 3],
    [4, 1, 0, 4],
    [4, 2, 0, 4],
    [1, 1, 0, 1],
    [1, 2, 0, 1],
];

/// `chi` on the representatives above: `2, -2, 1, -1, 0, phi, phibar, -phi, -phibar`.
pub fn chi_seed() -> [GoldenInt; NUM_CLASSES] {
    [
        GoldenInt::from_int(2),
        GoldenInt::from_int(-2),
        GoldenInt::from_int(1),
        GoldenInt::from_int(-1),
        GoldenInt::from_int(0),
        GoldenInt::phi(),
        GoldenInt::phibar(),
        -GoldenInt::phi(),
        -GoldenInt::phibar(),
    ]
}

/// `h_0..h_8 = 1, x, y, P_2(x), P_2(y), xy, P_3(x), P_4(x), x P_2(y)`.
pub fn h_poly(i: usize) -> Result<BiPoly> {
    let (x, y) = (BiPoly::x(), BiPoly::y());
    Ok(match i {
        0 => BiPoly::one(),
        1 => x,
        2 => y,
        3 => pk(2),
        4 => pk_y(2),
        5 => x * y,
        6 => pk(3),
        7 => pk(4),
        8 => x * pk_y(2),
        _ => {
            return Err(Error::OutOfRange {
                index: i,
                expected: "0..=8",
            })
        }
    })
}

/// A 2x2 matrix over `F_5` with determinant 1, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(pub [u8; 4]);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement([1, 0, 0, 1]);

    /// Reduces entries mod 5; `None` unless the determinant is 1.
    pub fn new(entries: [i64; 4]) -> Option<Self> {
        let e = entries.map(|v| v.rem_euclid(5) as u8);
        let g = GroupElement(e);
        (g.det() == 1).then_some(g)
    }

    pub fn det(&self) -> u8 {
        let [a, b, c, d] = self.0.map(u32::from);
        ((a * d + 5 * 5 - (b * c) % 5) % 5) as u8
    }

    pub fn trace(&self) -> u8 {
        (self.0[0] + self.0[3]) % 5
    }

    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        let [a, b, c, d] = self.0.map(u32::from);
        let [e, f, g, h] = rhs.0.map(u32::from);
        GroupElement([
            ((a * e + b * g) % 5) as u8,
            ((a * f + b * h) % 5) as u8,
            ((c * e + d * g) % 5) as u8,
            ((c * f + d * h) % 5) as u8,
        ])
    }

    /// Inverse of a determinant-one matrix: `(d -b / -c a)`.
    pub fn inv(&self) -> GroupElement {
        let [a, b, c, d] = self.0;
        GroupElement([d, (5 - b) % 5, (5 - c) % 5, a])
    }

    pub fn conjugate_by(&self, h: &GroupElement) -> GroupElement {
        h.mul(self).mul(&h.inv())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a} {b}/{c} {d})")
    }
}

/// All 120 elements of `SL(2, F_5)` in lexicographic order.
pub fn enumerate_group() -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(GROUP_ORDER);
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    if let Some(g) = GroupElement::new([a, b, c, d]) {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: GroupElement,
    pub size: usize,
    pub chi: GoldenInt,
    pub members: Vec<GroupElement>,
}

/// The nine classes in the frozen order of [`REPRESENTATIVES`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassTable {
    classes: Vec<ConjugacyClass>,
}

/// Values of a class function on the nine classes.
pub type ClassFunction = Vec<GoldenRational>;

impl ConjClassTable {
    /// Partitions the group by brute-force conjugation and matches each
    /// orbit to the unique representative it contains.
    pub fn build() -> Result<Self> {
        let group = enumerate_group();
        let mut assigned = vec![false; group.len()];
        let mut slots: Vec<Option<ConjugacyClass>> = vec![None; NUM_CLASSES];
        let seed = chi_seed();
        for (start, g) in group.iter().enumerate() {
            if assigned[start] {
                continue;
            }
            let mut members: Vec<GroupElement> = group.iter().map(|h| g.conjugate_by(h)).collect();
            members.sort();
            members.dedup();
            for m in &members {
                let pos = group.binary_search(m).expect("conjugates stay in the group");
                assigned[pos] = true;
            }
            let hits: Vec<usize> = REPRESENTATIVES
                .iter()
                .enumerate()
                .filter(|(_, r)| members.binary_search(&GroupElement(**r)).is_ok())
                .map(|(k, _)| k)
                .collect();
            let [slot] = hits[..] else {
                return Err(Error::ClassMismatch(format!(
                    "class of {g} contains {} listed representatives",
                    hits.len()
                )));
            };
            slots[slot] = Some(ConjugacyClass {
                representative: GroupElement(REPRESENTATIVES[slot]),
                size: members.len(),
                chi: seed[slot].clone(),
                members,
            });
        }
        let classes = slots
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                c.ok_or_else(|| {
                    Error::ClassMismatch(format!("{} is in no class", GroupElement(REPRESENTATIVES[k])))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { classes })
    }

    /// The table built once and shared.
    pub fn standard() -> &'static ConjClassTable {
        static TABLE: OnceLock<ConjClassTable> = OnceLock::new();
        TABLE.get_or_init(|| ConjClassTable::build().expect("SL(2,5) class table"))
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    /// Index of the class containing `g`.
    pub fn class_of(&self, g: &GroupElement) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.members.binary_search(g).is_ok())
    }

    /// `h_i(chi(C), chi(C)^tau)` on each class.
    pub fn char_from_h(&self, i: usize) -> Result<ClassFunction> {
        let h = h_poly(i)?;
        Ok(self.class_function(&h))
    }

    /// `C -> f(chi(C), chi(C)^tau)`.
    pub fn class_function(&self, f: &BiPoly) -> ClassFunction {
        self.classes
            .iter()
            .map(|c| f.eval_int(&c.chi, &c.chi.conj()))
            .collect()
    }

    /// `(1/120) sum_C |C| f(C) g(C)`; all characters here are real-valued.
    pub fn inner(&self, f: &[GoldenRational], g: &[GoldenRational]) -> GoldenRational {
        let sum = self
            .classes
            .iter()
            .zip(f.iter().zip(g))
            .fold(GoldenRational::zero(), |acc, (c, (u, v))| {
                acc + &(&GoldenRational::from(c.size as i64) * &(u * v))
            });
        &sum * &GoldenRational::from_parts(1, 0, GROUP_ORDER as i64).expect("nonzero")
    }

    /// Average of `f(chi(g), chi(g)^tau)` over the group.
    pub fn group_average(&self, f: &BiPoly) -> GoldenRational {
        let ones = vec![GoldenRational::one(); NUM_CLASSES];
        self.inner(&self.class_function(f), &ones)
    }

    /// `m_{k,i} = <P_k(chi), chi_i>`.
    pub fn multiplicities(&self, k: usize) -> Result<MultiplicityVector> {
        let sym = self.class_function(&pk(k));
        let mut m = [0u64; NUM_CLASSES];
        for (i, slot) in m.iter_mut().enumerate() {
            let value = self.inner(&sym, &self.char_from_h(i)?);
            *slot = value
                .to_integer()
                .filter(|n| !n.is_negative())
                .and_then(|n| n.to_u64())
                .ok_or_else(|| Error::NonIntegralMultiplicity {
                    k,
                    i,
                    value: value.to_string(),
                })?;
        }
        Ok(MultiplicityVector { k, m })
    }
}

/// Multiplicities of `chi_0..chi_8` in the `k`-th symmetric power of `chi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityVector {
    pub k: usize,
    pub m: [u64; NUM_CLASSES],
}

impl MultiplicityVector {
    /// `sum m_i d_i`, which equals `k + 1`.
    pub fn degree(&self) -> u64 {
        self.m.iter().zip(DIMENSIONS).map(|(m, d)| m * d).sum()
    }
}
