//! The residue functional `r(f) = Res_{s=1} sum Lambda(n) f(a_n, b_n) n^-s` on
//! polynomials of total degree at most 8, as a finite linear functional.
//!
//! Analytic input is frozen into [`BaseFlags`], which fix
//! `r(P_a(x) P_b(y))` for `a, b <= 4`. Everything else follows from three
//! rules:
//!
//! 1. `r(P_a(x) P_b(x)) = r(P_a(y) P_b(y)) = [a = b]` for `a, b <= 4`
//!    (each `sym^k` is self-dual and cuspidal). Closing these relations under
//!    `P_a P_b = P_{a+b} + ... + P_{|a-b|}` forces `r(P_k) = 0` for `1 <= k <= 8`.
//! 2. For `i, j <= 4`, expand `x^i y^j` in the tensor `P`-basis.
//! 3. Otherwise apply the reduction rule coming from
//!    `x P_2(y) = y P_2(x)` at almost all primes:
//!    `r(x^i y^j) = r(x^(i-1) y^(j+1)) + r(x^(i-2) y^j) - r(x^(i-1) y^(j-1))`
//!    for `0 < j < i`, and its mirror image when `j > i`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bipoly::{pk, pk_product, to_p_basis, BiPoly, Var};
use crate::error::{Error, Result};
use crate::golden::{a_set, GoldenInt, GoldenRational};

/// Highest total degree on which `r` is defined.
pub const MAX_DEGREE: usize = 8;

/// Highest index of `P_k` with known Rankin-Selberg pole orders.
pub const MAX_BASE_INDEX: usize = 4;

/// The encoded hypotheses. `r(P_k(x) P_k(y)) = 1` exactly when
/// `sym^k pi = sym^k pi'` (with `sym^0` the trivial representation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BaseFlags {
    pub pi_iso: bool,
    pub sym2_iso: bool,
    pub sym3_iso: bool,
    pub sym4_iso: bool,
}

impl Default for BaseFlags {
    /// `pi` and `pi'` differ, as do their symmetric squares; the symmetric
    /// cubes and fourth powers agree.
    fn default() -> Self {
        Self {
            pi_iso: false,
            sym2_iso: false,
            sym3_iso: true,
            sym4_iso: true,
        }
    }
}

impl BaseFlags {
    /// `r(P_a(x) P_b(y))` for `a, b <= 4`.
    pub fn r_base(&self, a: usize, b: usize) -> Result<u8> {
        for idx in [a, b] {
            if idx > MAX_BASE_INDEX {
                return Err(Error::OutOfRange {
                    index: idx,
                    expected: "0..=4",
                });
            }
        }
        if a != b {
            return Ok(0);
        }
        let iso = match a {
            0 => true,
            1 => self.pi_iso,
            2 => self.sym2_iso,
            3 => self.sym3_iso,
            _ => self.sym4_iso,
        };
        Ok(u8::from(iso))
    }
}

/// `r(P_a(x) P_b(y))` under the default hypotheses.
pub fn r_base(a: usize, b: usize) -> Result<u8> {
    BaseFlags::default().r_base(a, b)
}

/// The functional `r`, with all 45 values `r(x^i y^j)` (`i + j <= 8`)
/// computed at construction.
#[derive(Clone, Debug)]
pub struct RFunctional {
    flags: BaseFlags,
    single: Vec<GoldenRational>,
    table: BTreeMap<(usize, usize), GoldenRational>,
}

impl RFunctional {
    pub fn new(flags: BaseFlags) -> Self {
        let single = single_variable_residues();
        let mut builder = Builder {
            flags,
            single: &single,
            memo: BTreeMap::new(),
        };
        for i in 0..=MAX_DEGREE {
            for j in 0..=MAX_DEGREE - i {
                builder.monomial(i, j);
            }
        }
        let table = builder.memo;
        Self { flags, single, table }
    }

    /// The functional under the default hypotheses, built once.
    pub fn standard() -> &'static RFunctional {
        static STANDARD: OnceLock<RFunctional> = OnceLock::new();
        STANDARD.get_or_init(|| RFunctional::new(BaseFlags::default()))
    }

    pub fn flags(&self) -> BaseFlags {
        self.flags
    }

    /// `r(P_k(x))` (equal to `r(P_k(y))`) for `k <= 8`.
    pub fn single_variable(&self, k: usize) -> Result<&GoldenRational> {
        self.single.get(k).ok_or(Error::OutOfRange {
            index: k,
            expected: "0..=8",
        })
    }

    pub fn r_monomial(&self, i: usize, j: usize) -> Result<&GoldenRational> {
        if i + j > MAX_DEGREE {
            return Err(Error::DegreeTooHigh {
                degree: i + j,
                max: MAX_DEGREE,
            });
        }
        Ok(&self.table[&(i, j)])
    }

    pub fn r_poly(&self, f: &BiPoly) -> Result<GoldenRational> {
        if let Some(d) = f.total_degree().filter(|&d| d > MAX_DEGREE) {
            return Err(Error::DegreeTooHigh {
                degree: d,
                max: MAX_DEGREE,
            });
        }
        Ok(f.terms().fold(GoldenRational::zero(), |acc, ((i, j), c)| {
            acc + &(c * &self.table[&(i as usize, j as usize)])
        }))
    }

    /// All entries, row by row (`i` ascending, then `j`).
    pub fn table(&self) -> impl Iterator<Item = ((usize, usize), &GoldenRational)> {
        self.table.iter().map(|(&k, v)| (k, v))
    }

    /// Entries `(i, j)` at which one of the two orientations of the
    /// reduction rule fails on the finished table. Empty when the rule is
    /// consistent with every value, including those obtained by tensor
    /// expansion.
    pub fn reduction_rule_violations(&self) -> Vec<(usize, usize)> {
        let r = |i: usize, j: usize| &self.table[&(i, j)];
        let mut bad = Vec::new();
        for i in 0..=MAX_DEGREE {
            for j in 0..=MAX_DEGREE - i {
                let holds = if 0 < j && j < i {
                    r(i, j) == &(&(r(i - 1, j + 1) + r(i - 2, j)) - r(i - 1, j - 1))
                } else if 0 < i && i < j {
                    r(i, j) == &(&(r(i + 1, j - 1) + r(i, j - 2)) - r(i - 1, j - 1))
                } else {
                    true
                };
                if !holds {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Checks `r(P_a P_b) = [a = b]` in one variable for `a, b <= 4`
    /// against the derived values of `r(P_k)`.
    pub fn single_variable_consistent(&self) -> bool {
        (0..=MAX_BASE_INDEX).all(|a| {
            (0..=MAX_BASE_INDEX).all(|b| {
                let sum = pk_product(a, b)
                    .into_iter()
                    .fold(GoldenRational::zero(), |s, c| s + &self.single[c]);
                sum == GoldenRational::from(i64::from(a == b))
            })
        })
    }

    /// `r(f_alpha) / f_alpha(alpha, alpha^tau)`.
    pub fn density(&self, alpha: &GoldenInt) -> Result<GoldenRational> {
        Ok(self.f_alpha_entry(alpha)?.density)
    }

    pub fn f_alpha_entry(&self, alpha: &GoldenInt) -> Result<FAlpha> {
        let poly = make_f_alpha(alpha)?;
        let value_at_alpha = poly.eval_int(alpha, &alpha.conj());
        let residue = self.r_poly(&poly)?;
        let density = residue.checked_div(&value_at_alpha)?;
        Ok(FAlpha {
            alpha: alpha.clone(),
            poly,
            value_at_alpha,
            residue,
            density,
        })
    }

    /// One entry per element of `A`, in [`a_set`] order.
    pub fn f_alpha_family(&self) -> Result<Vec<FAlpha>> {
        a_set().iter().map(|a| self.f_alpha_entry(a)).collect()
    }
}

/// `r(P_k)` for `k <= 8`, from `r(P_a P_b) = [a = b]` (`a, b <= 4`). For each
/// `k` pick `a = min(k, 4)`, `b = k - a`; the top constituent of `P_a P_b` is
/// `P_k` and the others are already known.
fn single_variable_residues() -> Vec<GoldenRational> {
    let mut out: Vec<GoldenRational> = Vec::with_capacity(MAX_DEGREE + 1);
    for k in 0..=MAX_DEGREE {
        let a = k.min(MAX_BASE_INDEX);
        let b = k - a;
        let known = pk_product(a, b)
            .into_iter()
            .skip(1)
            .fold(GoldenRational::zero(), |s, c| s + &out[c]);
        out.push(&GoldenRational::from(i64::from(a == b)) - &known);
    }
    out
}

struct Builder<'a> {
    flags: BaseFlags,
    single: &'a [GoldenRational],
    memo: BTreeMap<(usize, usize), GoldenRational>,
}

impl Builder<'_> {
    fn monomial(&mut self, i: usize, j: usize) -> GoldenRational {
        if let Some(v) = self.memo.get(&(i, j)) {
            return v.clone();
        }
        let value = if i == 0 || j == 0 {
            self.one_variable(i + j)
        } else if i <= MAX_BASE_INDEX && j <= MAX_BASE_INDEX {
            self.tensor(i, j)
        } else if i > j {
            let v = self.monomial(i - 1, j + 1) + self.monomial(i - 2, j);
            v - self.monomial(i - 1, j - 1)
        } else {
            let v = self.monomial(i + 1, j - 1) + self.monomial(i, j - 2);
            v - self.monomial(i - 1, j - 1)
        };
        self.memo.insert((i, j), value.clone());
        value
    }

    fn one_variable(&self, n: usize) -> GoldenRational {
        let basis = to_p_basis(&BiPoly::var_pow(Var::X, n as u32), Var::X).expect("x^n is univariate in x");
        basis
            .coeffs
            .iter()
            .zip(self.single)
            .fold(GoldenRational::zero(), |acc, (c, r)| acc + &(c * r))
    }

    fn tensor(&self, i: usize, j: usize) -> GoldenRational {
        let bx = to_p_basis(&BiPoly::var_pow(Var::X, i as u32), Var::X).expect("univariate");
        let by = to_p_basis(&BiPoly::var_pow(Var::Y, j as u32), Var::Y).expect("univariate");
        let mut acc = GoldenRational::zero();
        for (a, ca) in bx.coeffs.iter().enumerate() {
            for (b, cb) in by.coeffs.iter().enumerate() {
                let base = self.flags.r_base(a, b).expect("indices bounded by 4");
                if base != 0 {
                    acc = acc + &(ca * cb);
                }
            }
        }
        acc
    }
}

/// A member of the family `f_alpha` together with its density data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FAlpha {
    pub alpha: GoldenInt,
    pub poly: BiPoly,
    pub value_at_alpha: GoldenRational,
    pub residue: GoldenRational,
    pub density: GoldenRational,
}

/// The polynomial `f_alpha`, vanishing at `(beta, beta^tau)` for every
/// `beta` in `A` other than `alpha`.
///
/// For the four golden values the middle factor is `1 + e(x + y)` with
/// `e = alpha + alpha^tau = ±1`, which kills the two points of `A` not
/// already removed by `x - y` and `x - alpha^tau`.
pub fn make_f_alpha(alpha: &GoldenInt) -> Result<BiPoly> {
    let idx = crate::golden::a_index(alpha).ok_or_else(|| Error::NotInA(alpha.to_string()))?;
    let (x, y) = (BiPoly::x(), BiPoly::y());
    let c = |n: i64| BiPoly::int(n);
    let xy1 = &x * &y + c(1);
    let alpha_poly = BiPoly::constant(alpha.clone().into());
    Ok(match idx {
        0 => xy1 * pk(2) * (x.pow(2) - c(4)),
        1 | 2 => (x.pow(2) + y.pow(2) - c(3)) * &x * (&x + &alpha_poly) * (x.pow(2) - c(4)),
        3 | 4 => xy1 * &x * pk(2) * (&x + &alpha_poly),
        _ => {
            let trace = alpha + &alpha.conj();
            let eps = BiPoly::constant(trace.into());
            let conj = BiPoly::constant(alpha.conj().into());
            (&x - &y) * (c(1) + eps * (&x + &y)) * (&x - conj)
        }
    })
}
