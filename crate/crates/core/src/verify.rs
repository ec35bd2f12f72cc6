//! The sectioned self-check behind `verify-all`.
//!
//! Sections run in dependency order and stop at the first failure; later
//! sections are reported as skipped.

use std::time::Instant;

use serde::Serialize;

use crate::bipoly::{pk, pk_product, tk, to_p_basis, BiPoly, Var};
use crate::error::Result;
use crate::frobsim::{binomial_band, class_measure_densities, run_report, Target};
use crate::golden::{a_set, GoldenInt, GoldenRational};
use crate::icosagroup::{ConjClassTable, DIMENSIONS, NUM_CLASSES};
use crate::identities::{self, octic_h, quartic_f};
use crate::isobaric::{build_pi, coeff_rep};
use crate::rescalc::{make_f_alpha, RFunctional, MAX_DEGREE};

/// `r(x^i y^j)`, row `i`, column `j`.
pub const REFERENCE_R_TABLE: [&[u32]; 9] = [
    &[1, 0, 1, 0, 2, 0, 5, 0, 14],
    &[0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 0, 2, 0, 6],
    &[0, 0, 0, 1, 0, 4],
    &[2, 0, 2, 0, 5],
    &[0, 0, 0, 4],
    &[5, 0, 6],
    &[0, 1],
    &[14],
];

/// Character table as `(a, b)` for `a + b phi`; rows `chi_0..chi_8`, columns
/// in class order.
pub const REFERENCE_CHARACTERS: [[(i64, i64); NUM_CLASSES]; NUM_CLASSES] = [
    [(1, 0); 9],
    [
        (2, 0),
        (-2, 0),
        (1, 0),
        (-1, 0),
        (0, 0),
        (0, 1),
        (1, -1),
        (0, -1),
        (-1, 1),
    ],
    [
        (2, 0),
        (-2, 0),
        (1, 0),
        (-1, 0),
        (0, 0),
        (1, -1),
        (0, 1),
        (-1, 1),
        (0, -1),
    ],
    [
        (3, 0),
        (3, 0),
        (0, 0),
        (0, 0),
        (-1, 0),
        (0, 1),
        (1, -1),
        (0, 1),
        (1, -1),
    ],
    [
        (3, 0),
        (3, 0),
        (0, 0),
        (0, 0),
        (-1, 0),
        (1, -1),
        (0, 1),
        (1, -1),
        (0, 1),
    ],
    [
        (4, 0),
        (4, 0),
        (1, 0),
        (1, 0),
        (0, 0),
        (-1, 0),
        (-1, 0),
        (-1, 0),
        (-1, 0),
    ],
    [
        (4, 0),
        (-4, 0),
        (-1, 0),
        (1, 0),
        (0, 0),
        (1, 0),
        (1, 0),
        (-1, 0),
        (-1, 0),
    ],
    [
        (5, 0),
        (5, 0),
        (-1, 0),
        (-1, 0),
        (1, 0),
        (0, 0),
        (0, 0),
        (0, 0),
        (0, 0),
    ],
    [
        (6, 0),
        (-6, 0),
        (0, 0),
        (0, 0),
        (0, 0),
        (-1, 0),
        (-1, 0),
        (1, 0),
        (1, 0),
    ],
];

/// Expected densities in `a_set` order, as `(numerator, denominator)`.
pub const REFERENCE_DENSITIES: [(i64, i64); 9] = [
    (1, 4),
    (1, 6),
    (1, 6),
    (1, 120),
    (1, 120),
    (1, 10),
    (1, 10),
    (1, 10),
    (1, 10),
];

pub const SECTIONS: [&str; 7] = [
    "golden",
    "bipoly",
    "rescalc",
    "identities",
    "icosagroup",
    "isobaric",
    "frobsim",
];

pub const SIM_X: u64 = 1_000_000;
pub const SIM_SEED: u64 = 42;
pub const SIM_PI_X: u64 = 78_498;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SectionReport {
    pub name: &'static str,
    pub pass: bool,
    pub skipped: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub sections: Vec<SectionReport>,
}

#[derive(Default)]
struct Checks {
    count: usize,
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn result<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.count += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }
}

pub fn run_section(name: &str) -> Option<SectionReport> {
    let (name, body): (&'static str, fn(&mut Checks)) = match name {
        "golden" => ("golden", golden),
        "bipoly" => ("bipoly", bipoly),
        "rescalc" => ("rescalc", rescalc),
        "identities" => ("identities", identities_section),
        "icosagroup" => ("icosagroup", icosagroup),
        "isobaric" => ("isobaric", isobaric),
        "frobsim" => ("frobsim", frobsim),
        _ => return None,
    };
    let start = Instant::now();
    let mut c = Checks::default();
    body(&mut c);
    Some(SectionReport {
        name,
        pass: c.failures.is_empty(),
        skipped: false,
        checks: c.count,
        failures: c.failures,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn verify_all() -> VerifyReport {
    let mut sections = Vec::new();
    let mut failed = false;
    for name in SECTIONS {
        if failed {
            sections.push(SectionReport {
                name,
                skipped: true,
                ..Default::default()
            });
            continue;
        }
        let report = run_section(name).expect("known section");
        failed = !report.pass;
        sections.push(report);
    }
    VerifyReport {
        pass: !failed,
        sections,
    }
}

fn golden(c: &mut Checks) {
    let phi = GoldenInt::phi();
    c.check(phi.pow(2) == &phi + &GoldenInt::one(), || {
        "phi^2 != phi + 1".into()
    });
    c.check(GoldenInt::sqrt5().pow(2) == GoldenInt::from_int(5), || {
        "sqrt5^2 != 5".into()
    });
    let set = a_set();
    for a in &set {
        c.check(a.conj().conj() == *a, || {
            format!("tau is not an involution at {a}")
        });
        c.check(a.in_a() && a.conj().in_a(), || {
            format!("{a} or its conjugate left A")
        });
        for b in &set {
            let ab = a * b;
            c.check(ab.norm() == a.norm() * b.norm(), || {
                format!("norm not multiplicative at {a}, {b}")
            });
            c.check(ab.conj() == &a.conj() * &b.conj(), || {
                format!("tau not multiplicative at {a}, {b}")
            });
        }
        if !a.is_zero() {
            let q = GoldenRational::from(a.clone());
            let ok = q.inv().map(|i| (&i * &q).is_one()).unwrap_or(false);
            c.check(ok, || format!("inverse of {a} failed"));
        }
    }
}

fn bipoly(c: &mut Checks) {
    let x = BiPoly::x();
    for k in 2..=20 {
        c.check(pk(k) == &x * &pk(k - 1) - pk(k - 2), || {
            format!("P_{k} recurrence")
        });
        c.check(tk(k) == pk(k) - pk(k - 2), || {
            format!("t_{k} != P_{k} - P_{}", k - 2)
        });
    }
    for a in 0..=8 {
        for b in 0..=8 {
            let sum = pk_product(a, b)
                .into_iter()
                .fold(BiPoly::zero(), |acc, m| acc + pk(m));
            c.check(pk(a) * pk(b) == sum, || format!("P_{a} P_{b} expansion"));
        }
    }
    for k in 0..=12 {
        let f = x.pow(k as u32);
        let ok = to_p_basis(&f, Var::X)
            .map(|v| v.reconstruct() == f)
            .unwrap_or(false);
        c.check(ok, || format!("x^{k} P-basis round trip"));
    }
}

fn rescalc(c: &mut Checks) {
    let r = RFunctional::standard();
    for (i, row) in REFERENCE_R_TABLE.iter().enumerate() {
        for (j, &want) in row.iter().enumerate() {
            let got = r.r_monomial(i, j).cloned();
            let ok = got
                .as_ref()
                .map(|g| *g == GoldenRational::from(want as i64))
                .unwrap_or(false);
            c.check(ok, || format!("r(x^{i} y^{j}) = {got:?}, expected {want}"));
        }
    }
    c.check(r.reduction_rule_violations().is_empty(), || {
        "reduction rule violated".into()
    });
    c.check(r.single_variable_consistent(), || {
        "single-variable values inconsistent".into()
    });
    for (k, v) in [
        (quartic_f(), 0),
        (BiPoly::monomial(GoldenRational::one(), 2, 2), 1),
        (octic_h(), 0),
    ] {
        let got = r.r_poly(&k);
        c.check(matches!(&got, Ok(g) if *g == GoldenRational::from(v)), || {
            format!("r({k}) = {got:?}")
        });
    }
    let Some(family) = c.result(r.f_alpha_family(), "f_alpha family") else {
        return;
    };
    let mut total = GoldenRational::zero();
    for (entry, (n, d)) in family.iter().zip(REFERENCE_DENSITIES) {
        let want = GoldenRational::from_parts(n, 0, d).expect("nonzero");
        c.check(entry.density == want, || {
            format!("density({}) = {}, expected {want}", entry.alpha, entry.density)
        });
        total = total + &entry.density;
    }
    c.check(total.is_one(), || format!("densities sum to {total}"));
}

fn identities_section(c: &mut Checks) {
    for report in identities::verify_all() {
        c.check(report.pass, || {
            format!("{} failed: {}", report.id, report.failures.join("; "))
        });
    }
    let perturbed = identities::quartic_f_p_form(7);
    c.check(perturbed != quartic_f(), || {
        "perturbed I1 control still equals F".into()
    });
}

fn icosagroup(c: &mut Checks) {
    let Some(table) = c.result(ConjClassTable::build(), "class table") else {
        return;
    };
    c.check(table.sizes() == [1, 1, 20, 20, 30, 12, 12, 12, 12], || {
        format!("class sizes {:?}", table.sizes())
    });
    let mut rows = Vec::new();
    for (i, reference) in REFERENCE_CHARACTERS.iter().enumerate() {
        let Some(row) = c.result(table.char_from_h(i), "character") else {
            return;
        };
        let want: Vec<GoldenRational> = reference
            .iter()
            .map(|&(a, b)| GoldenRational::from_parts(a, b, 1).expect("nonzero"))
            .collect();
        c.check(row == want, || format!("chi_{i} differs from the reference row"));
        rows.push(row);
    }
    for i in 0..NUM_CLASSES {
        for j in 0..NUM_CLASSES {
            let ip = table.inner(&rows[i], &rows[j]);
            c.check(ip == GoldenRational::from(i64::from(i == j)), || {
                format!("<chi_{i}, chi_{j}> = {ip}")
            });
        }
    }
    let sizes = table.sizes();
    for a in 0..NUM_CLASSES {
        for b in 0..NUM_CLASSES {
            let sum = rows
                .iter()
                .fold(GoldenRational::zero(), |acc, row| acc + &(&row[a] * &row[b]));
            let want = if a == b {
                GoldenRational::from((120 / sizes[a]) as i64)
            } else {
                GoldenRational::zero()
            };
            c.check(sum == want, || format!("column orthogonality at ({a}, {b})"));
        }
    }
    for k in 0..=50 {
        let Some(m) = c.result(table.multiplicities(k), "multiplicities") else {
            return;
        };
        c.check(m.degree() == k as u64 + 1, || {
            format!("m_{k} has degree {}", m.degree())
        });
    }
    if let Some(m5) = c.result(table.multiplicities(5), "m_5") {
        c.check(m5.m == [0, 0, 0, 0, 0, 0, 0, 0, 1], || {
            format!("m_5 = {:?}", m5.m)
        });
    }
    let r = RFunctional::standard();
    for i in 0..=MAX_DEGREE {
        for j in 0..=MAX_DEGREE - i {
            let avg = table.group_average(&BiPoly::monomial(GoldenRational::one(), i as u32, j as u32));
            let ok = r.r_monomial(i, j).map(|v| *v == avg).unwrap_or(false);
            c.check(ok, || format!("group average of x^{i} y^{j} is {avg}"));
        }
    }
}

fn isobaric(c: &mut Checks) {
    let table = ConjClassTable::standard();
    let zero = GoldenRational::zero();
    for k in 0..=20 {
        let Some(rep) = c.result(build_pi(k), "Pi_k") else {
            return;
        };
        let Some(m) = c.result(table.multiplicities(k), "multiplicities") else {
            return;
        };
        let p = pk(k);
        for alpha in a_set() {
            let a: GoldenRational = alpha.clone().into();
            let want = p.eval(&a, &zero);
            let via_h = (0..NUM_CLASSES).fold(GoldenRational::zero(), |acc, i| {
                let h = crate::icosagroup::h_poly(i)
                    .expect("in range")
                    .eval(&a, &a.conj());
                acc + &(&GoldenRational::from(m.m[i] as i64) * &h)
            });
            c.check(via_h == want, || format!("P_{k}({alpha}) via h_i"));
            c.check(coeff_rep(&rep, &a, &a.conj()) == want, || {
                format!("c(Pi_{k}) at {alpha}")
            });
        }
        c.check(rep.degree() == (k as u64) + 1, || {
            format!("Pi_{k} has degree {}", rep.degree())
        });
    }
    c.check(DIMENSIONS.iter().map(|d| d * d).sum::<u64>() == 120, || {
        "sum of squared dimensions".into()
    });
    let x = BiPoly::x();
    let root = &x * &pk(2);
    let Some((q, rem)) = c.result(
        (pk(5) - &root).div_rem_univariate(&(&root * &(x.pow(2) - BiPoly::int(4))), Var::X),
        "division",
    ) else {
        return;
    };
    c.check(rem.is_zero() && q == BiPoly::one(), || {
        format!("sym5 quotient {q}, remainder {rem}")
    });
}

/// The default simulation targets: `1`, `H`, and `f_0`, `f_1`, `f_phi`
/// each scaled so that `r` of it is 1.
pub fn default_targets() -> Vec<Target> {
    let r = RFunctional::standard();
    let normalized = |a: GoldenInt| {
        let p = make_f_alpha(&a).expect("alpha in A");
        let residue = r.r_poly(&p).expect("degree <= 8");
        p.scale(&residue.inv().expect("r(f_alpha) != 0"))
    };
    vec![
        Target::new("1", BiPoly::one()),
        Target::new("H", octic_h()),
        Target::new("f_0", normalized(GoldenInt::zero())),
        Target::new("f_1", normalized(GoldenInt::one())),
        Target::new("f_phi", normalized(GoldenInt::phi())),
    ]
}

fn frobsim(c: &mut Checks) {
    let targets = default_targets();
    let Some(report) = c.result(run_report(SIM_X, SIM_SEED, &targets), "simulation") else {
        return;
    };
    c.check(report.pi_x == SIM_PI_X, || format!("pi(X) = {}", report.pi_x));
    for ((alpha, got), want) in a_set()
        .iter()
        .zip(report.densities.0)
        .zip(class_measure_densities())
    {
        let band = binomial_band(want, report.pi_x);
        c.check((got - want).abs() <= band, || {
            format!("density({alpha}) = {got}, expected {want} ± {band}")
        });
    }
    for entry in &report.partial_sums {
        let tol = 0.05 * entry.target.abs().max(1.0);
        c.check((entry.ratio - entry.target).abs() <= tol, || {
            format!("ratio for {} = {}, target {}", entry.f, entry.ratio, entry.target)
        });
    }
}
