//! Cohomological realization of the flip tower.
//!
//! Every sequence built in [`crate::formal`] has the same shape in singular
//! cohomology, with `A^j(Y)` contributing `H^{2j}(Y)` and `H^{2j+1}(Y)`. A
//! codimension-`c` shift becomes multiplication by `t^{2c}`, so one flip
//! changes the Poincaré polynomial by
//!
//! ```text
//! P(M_k) - P(M_{k-1}) = P(S^k X) (sum_{s=0}^{m-2k-2} t^{2(k+s)} - sum_{r=0}^{k-2} t^{2(m-2k+r)})
//! ```
//!
//! and `P(N) = P(M_w) / (1 + t^2 + ... + t^{2(n-1)})`.

use num_bigint::BigInt;

use crate::error::{check_range, Error, Result};
use crate::exec::Execution;
use crate::formal::{
    final_sequence, resolution, star_sequence, summed_sequence, theorem_sequence, Atom, AtomSpace,
    ExactSequenceSpec,
};
use crate::params::{ModuliParams, SpaceId};
use crate::poincare::{closed_form_oracle_n, sym_power_table};
use crate::poly::IntPolynomial;

/// Poincaré polynomials of `M_0, ..., M_w` with the per-step differences.
#[derive(Debug, Clone)]
pub struct FlipTower {
    params: ModuliParams,
    sym: Vec<IntPolynomial>,
    steps: Vec<IntPolynomial>,
    deltas: Vec<IntPolynomial>,
}

impl FlipTower {
    pub fn new(params: &ModuliParams) -> Self {
        let w = params.flips();
        let sym = sym_power_table(params.g(), w);
        let mut steps = Vec::with_capacity(w + 1);
        let mut deltas = Vec::with_capacity(w + 1);
        steps.push(IntPolynomial::projective_space(params.m() - 1));
        deltas.push(IntPolynomial::zero());
        for k in 1..=w {
            let delta = &sym[k] * &collapsed_shift(params, k);
            steps.push(&steps[k - 1] + &delta);
            deltas.push(delta);
        }
        FlipTower {
            params: *params,
            sym,
            steps,
            deltas,
        }
    }

    pub fn params(&self) -> &ModuliParams {
        &self.params
    }

    /// `P(S^k X)` for `0 <= k <= w`.
    pub fn sym_power(&self, k: usize) -> &IntPolynomial {
        &self.sym[k]
    }

    pub fn poincare_m(&self, k: usize) -> &IntPolynomial {
        &self.steps[k]
    }

    /// `P(M_k) - P(M_{k-1})`; zero at `k = 0`.
    pub fn delta(&self, k: usize) -> &IntPolynomial {
        &self.deltas[k]
    }

    /// The step difference computed through the blow-up of `M_{k-1}` along
    /// `Z_k^-` and of `M_k` along `Z_k^+`, before any cancellation.
    pub fn delta_uncollapsed(&self, k: usize) -> IntPolynomial {
        let p = &self.params;
        let base = &self.sym[k];
        let z_minus = base * &IntPolynomial::projective_space(p.rank_w_minus(k) - 1);
        let z_plus = base * &IntPolynomial::projective_space(p.rank_w_plus(k) - 1);
        // A(blow-up) = A(Y) ⊕ ⊕_{s=0}^{codim-2} A^{*-s-1}(Z)
        let from_minus =
            (&z_minus * &IntPolynomial::projective_space(p.codim_z_minus(k) - 2)).shift(2);
        let from_plus =
            (&z_plus * &IntPolynomial::projective_space(p.codim_z_plus(k) - 2)).shift(2);
        &from_minus - &from_plus
    }

    pub fn poincare_n(&self) -> Result<IntPolynomial> {
        let fiber = IntPolynomial::projective_space(self.params.n() - 1);
        self.steps[self.params.flips()].exact_div(&fiber)
    }

    /// First degree where the cohomological realization of `seq` breaks
    /// `middle = kernel + quotient`, if any.
    pub fn additivity_mismatch(
        &self,
        p_n: Option<&IntPolynomial>,
        seq: &ExactSequenceSpec,
    ) -> Option<String> {
        additivity_failure(self, p_n, Ok(seq.clone()))
    }

    /// Failure description for the resolution of `A^l(N)`: alphabet, depth
    /// bound and Euler characteristic against `p_n`.
    pub fn resolution_mismatch(&self, p_n: &IntPolynomial, l: i64) -> Option<String> {
        resolution_failure(self, p_n, l)
    }

    fn cohomology_of<'a>(
        &'a self,
        space: AtomSpace,
        p_n: Option<&'a IntPolynomial>,
    ) -> Option<&'a IntPolynomial> {
        match space {
            AtomSpace::M(k) => self.steps.get(k),
            AtomSpace::SymX(k) => self.sym.get(k),
            AtomSpace::N => p_n,
        }
    }
}

/// `sum_{s=0}^{m-2k-2} t^{2(k+s)} - sum_{r=0}^{k-2} t^{2(m-2k+r)}`.
pub fn collapsed_shift(p: &ModuliParams, k: usize) -> IntPolynomial {
    let (m, ki) = (p.m(), k as i64);
    let gained = IntPolynomial::projective_space(m - 2 * ki - 2).shift(2 * k);
    let lost = IntPolynomial::projective_space(ki - 2).shift(2 * (m - 2 * ki) as usize);
    &gained - &lost
}

/// Poincaré polynomial of `M_k`, with every intermediate step checked for
/// nonnegative Betti numbers.
pub fn poincare_m(p: &ModuliParams, k: usize) -> Result<IntPolynomial> {
    check_range("k", k as i64, 0, p.w())?;
    let tower = FlipTower::new(p);
    for j in 0..=k {
        if let Some((degree, value)) = tower.poincare_m(j).first_negative() {
            return Err(Error::NegativeBettiNumber {
                k: j,
                degree,
                value: value.to_string(),
            });
        }
    }
    Ok(tower.poincare_m(k).clone())
}

/// Poincaré polynomial of `N`, obtained by dividing `P(M_w)` by the fiber `P^{n-1}`.
pub fn poincare_n(p: &ModuliParams) -> Result<IntPolynomial> {
    poincare_m(p, p.flips())?;
    FlipTower::new(p).poincare_n()
}

/// A named pass/fail record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn from_failures(name: &'static str, total: usize, failures: Vec<String>) -> Self {
        match failures.into_iter().next() {
            None => CheckResult {
                name,
                passed: true,
                detail: format!("{total} cases"),
            },
            Some(first) => CheckResult {
                name,
                passed: false,
                detail: first,
            },
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        CheckResult {
            name,
            passed: false,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub space: SpaceId,
    pub poincare: IntPolynomial,
    pub delta: IntPolynomial,
}

/// Result of [`verify`]: the tower, `P(N)` when the division was exact, and
/// the outcome of every named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipTrace {
    pub params: ModuliParams,
    pub per_step: Vec<StepRecord>,
    pub final_poincare: Option<IntPolynomial>,
    pub checks: Vec<CheckResult>,
}

impl FlipTrace {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn verify(p: &ModuliParams, sibling: Option<&ModuliParams>) -> FlipTrace {
    verify_with(p, sibling, Execution::default())
}

/// Runs the whole check suite. Failures are recorded, never returned as errors.
///
/// With a `sibling` parameter set (same genus, other degree) the
/// `d_independence` check compares both `P(N)`.
pub fn verify_with(p: &ModuliParams, sibling: Option<&ModuliParams>, exec: Execution) -> FlipTrace {
    let tower = FlipTower::new(p);
    let w = p.flips();
    let top = 2 * (p.m() - 1) as usize;
    let mut checks = Vec::new();

    let per_step: Vec<StepRecord> = (0..=w)
        .map(|k| StepRecord {
            space: SpaceId::M(k),
            poincare: tower.poincare_m(k).clone(),
            delta: tower.delta(k).clone(),
        })
        .collect();

    let failures = |pred: &dyn Fn(&IntPolynomial) -> bool| -> Vec<String> {
        per_step
            .iter()
            .enumerate()
            .filter(|(_, s)| !pred(&s.poincare))
            .map(|(k, s)| format!("M{k}: {}", s.poincare))
            .collect()
    };
    checks.push(CheckResult::from_failures(
        "palindrome_per_step",
        w + 1,
        failures(&|q| q.is_palindromic()),
    ));
    checks.push(CheckResult::from_failures(
        "nonneg_per_step",
        w + 1,
        failures(&|q| q.has_nonnegative_coeffs()),
    ));
    checks.push(CheckResult::from_failures(
        "degree_per_step",
        w + 1,
        failures(&|q| q.degree() == Some(top) && q.coeff(0) == BigInt::from(1)),
    ));

    let collapse: Vec<String> = (1..=w)
        .filter(|&k| *tower.delta(k) != tower.delta_uncollapsed(k))
        .map(|k| {
            format!(
                "k={k}: {} vs {}",
                tower.delta(k),
                tower.delta_uncollapsed(k)
            )
        })
        .collect();
    checks.push(CheckResult::from_failures(
        "collapse_agreement",
        w,
        collapse,
    ));

    let p_n = tower.poincare_n();
    checks.push(match &p_n {
        Ok(q) => CheckResult {
            name: "division_exact",
            passed: true,
            detail: format!("P(N) = {q}"),
        },
        Err(e) => CheckResult::fail("division_exact", e.to_string()),
    });
    let p_n = p_n.ok();

    checks.push(match (&p_n, closed_form_oracle_n(p.g())) {
        (Some(ours), Ok(oracle)) if *ours == oracle => CheckResult {
            name: "oracle_match",
            passed: true,
            detail: format!("g={}", p.g()),
        },
        (Some(ours), Ok(oracle)) => {
            CheckResult::fail("oracle_match", format!("{ours} != {oracle}"))
        }
        (None, _) => CheckResult::fail("oracle_match", "P(N) unavailable"),
        (_, Err(e)) => CheckResult::fail("oracle_match", format!("oracle: {e}")),
    });

    if let Some(other) = sibling {
        checks.push(d_independence(p, p_n.as_ref(), other));
    }

    let flip_cases: Vec<(usize, i64)> = (1..=w)
        .flat_map(|k| (-1..=p.m()).map(move |l| (k, l)))
        .collect();
    let flip_fail = exec.map(&flip_cases, |&(k, l)| {
        additivity_failure(&tower, p_n.as_ref(), star_sequence(p, k, l))
    });
    checks.push(CheckResult::from_failures(
        "rank_additivity",
        flip_cases.len(),
        flip_fail.into_iter().flatten().collect(),
    ));

    checks.push(match &p_n {
        None => CheckResult::fail("sequence_additivity", "P(N) unavailable"),
        Some(_) => {
            let dim_n = p.dim_n();
            let mut cases: Vec<(u8, i64)> = (-1..=p.m()).map(|l| (0, l)).collect();
            cases.extend((-1..=dim_n + 1).flat_map(|l| [(1, l), (2, l)]));
            let fails = exec.map(&cases, |&(which, l)| {
                let seq = match which {
                    0 => summed_sequence(p, l),
                    1 => final_sequence(p, l),
                    _ => theorem_sequence(p, l),
                };
                additivity_failure(&tower, p_n.as_ref(), seq)
            });
            CheckResult::from_failures(
                "sequence_additivity",
                cases.len(),
                fails.into_iter().flatten().collect(),
            )
        }
    });

    checks.push(match &p_n {
        None => CheckResult::fail("resolution_euler", "P(N) unavailable"),
        Some(q) => {
            let codims: Vec<i64> = (0..=p.dim_n()).collect();
            let fails = exec.map(&codims, |&l| resolution_failure(&tower, q, l));
            CheckResult::from_failures(
                "resolution_euler",
                codims.len(),
                fails.into_iter().flatten().collect(),
            )
        }
    });

    FlipTrace {
        params: *p,
        per_step,
        final_poincare: p_n,
        checks,
    }
}

/// [`verify_with`] over many parameter sets.
pub fn verify_batch(params: &[ModuliParams], exec: Execution) -> Vec<FlipTrace> {
    exec.map(params, |p| verify_with(p, None, exec))
}

fn d_independence(
    p: &ModuliParams,
    ours: Option<&IntPolynomial>,
    other: &ModuliParams,
) -> CheckResult {
    const NAME: &str = "d_independence";
    if other.g() != p.g() {
        return CheckResult::fail(NAME, format!("sibling genus {} != {}", other.g(), p.g()));
    }
    match (ours, FlipTower::new(other).poincare_n()) {
        (Some(a), Ok(b)) if *a == b => CheckResult {
            name: NAME,
            passed: true,
            detail: format!("d={} and d={}", p.d(), other.d()),
        },
        (Some(a), Ok(b)) => {
            CheckResult::fail(NAME, format!("d={}: {a}; d={}: {b}", p.d(), other.d()))
        }
        (None, _) => CheckResult::fail(NAME, "P(N) unavailable"),
        (_, Err(e)) => CheckResult::fail(NAME, format!("d={}: {e}", other.d())),
    }
}

/// Rank of `A^j(Y)` realized in cohomological degree `2j + parity`.
fn atom_rank(tower: &FlipTower, p_n: Option<&IntPolynomial>, atom: &Atom, parity: i64) -> BigInt {
    tower
        .cohomology_of(atom.space(), p_n)
        .map(|q| q.coeff_at(2 * atom.codim() + parity))
        .unwrap_or_default()
}

/// Cohomological rank of the whole sequence realized in degrees `2l` and `2l + 1`,
/// returning a description of the first mismatch between middle and kernel + quotient.
fn additivity_failure(
    tower: &FlipTower,
    p_n: Option<&IntPolynomial>,
    seq: Result<ExactSequenceSpec>,
) -> Option<String> {
    let seq = match seq {
        Ok(s) => s,
        Err(e) => return Some(e.to_string()),
    };
    (0..2).find_map(|parity| {
        let rank = |a: &Atom| atom_rank(tower, p_n, a, parity);
        let middle = seq.middle.realize(rank);
        let sides = seq.kernel.realize(rank) + seq.quotient.realize(rank);
        (middle != sides).then(|| {
            format!(
                "{} at l={} degree {}: middle {middle} != {sides}",
                seq.kind,
                seq.codim,
                2 * seq.codim + parity
            )
        })
    })
}

/// Checks the terminal alphabet, the depth bound and the Euler characteristic
/// `sum_i (-1)^i rank(Ω_i) = b_{2l+ε}(N)` in both parities.
fn resolution_failure(tower: &FlipTower, p_n: &IntPolynomial, l: i64) -> Option<String> {
    let p = tower.params();
    let res = match resolution(p, l) {
        Ok(r) => r,
        Err(e) => return Some(e.to_string()),
    };
    if !res.is_terminal() {
        return Some(format!("l={l}: non-terminal atom in resolution"));
    }
    match res.depth() {
        Some(t) if (t as i64) <= p.dim_n() - l + 1 => {}
        other => return Some(format!("l={l}: depth {other:?} exceeds bound")),
    }
    (0..2).find_map(|parity| {
        let rank = |a: &Atom| atom_rank(tower, None, a, parity);
        let euler: BigInt = res
            .terms
            .iter()
            .enumerate()
            .map(|(i, omega)| {
                let r = omega.realize(rank);
                if i % 2 == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum();
        let expected = p_n.coeff_at(2 * l + parity);
        (euler != expected).then(|| {
            format!(
                "l={l} degree {}: euler {euler} != {expected}",
                2 * l + parity
            )
        })
    })
}
