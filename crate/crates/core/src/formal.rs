//! Formal direct-sum bookkeeping for the exact sequences of the flip tower.
//!
//! Nothing here knows about cycles or maps. An [`Atom`] stands for a Chow
//! group `A^j(Y)`, a [`FormalDecomposition`] for a direct sum of them, and an
//! [`ExactSequenceSpec`] records the three terms of a split short exact
//! sequence. Atoms outside `0 <= j <= dim Y` are the zero group and are
//! dropped on insertion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{check_range, Result};
use crate::params::{ModuliParams, SpaceId};

/// Spaces whose Chow groups may appear as atoms.
///
/// `M(0)` and `SymX(k)` form the alphabet of the final statements. `M(k)` for
/// `k > 0` and `N` only occur as the marker terms of intermediate sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomSpace {
    M(usize),
    SymX(usize),
    N,
}

impl AtomSpace {
    pub fn is_terminal(&self) -> bool {
        matches!(self, AtomSpace::M(0) | AtomSpace::SymX(_))
    }
}

impl From<AtomSpace> for SpaceId {
    fn from(s: AtomSpace) -> SpaceId {
        match s {
            AtomSpace::M(k) => SpaceId::M(k),
            AtomSpace::SymX(k) => SpaceId::SymX(k),
            AtomSpace::N => SpaceId::N,
        }
    }
}

impl fmt::Display for AtomSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomSpace::M(k) => write!(f, "M{k}"),
            AtomSpace::SymX(k) => write!(f, "S{k}"),
            AtomSpace::N => f.write_str("N"),
        }
    }
}

/// `A^codim(space)`, guaranteed nonzero as a formal symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    space: AtomSpace,
    codim: i64,
}

impl Atom {
    /// `Ok(None)` when `codim` lies outside `0..=dim(space)`.
    pub fn new(p: &ModuliParams, space: AtomSpace, codim: i64) -> Result<Option<Atom>> {
        let dim = p.dim_of(space.into())?;
        Ok((0..=dim).contains(&codim).then_some(Atom { space, codim }))
    }

    pub fn space(&self) -> AtomSpace {
        self.space
    }

    pub fn codim(&self) -> i64 {
        self.codim
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A^{}({})", self.codim, self.space)
    }
}

/// Finite multiset of atoms, kept in canonical order (space, then ascending codim).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalDecomposition {
    counts: BTreeMap<Atom, usize>,
}

impl FormalDecomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, atom: Atom, multiplicity: usize) {
        if multiplicity > 0 {
            *self.counts.entry(atom).or_default() += multiplicity;
        }
    }

    /// Adds `A^codim(space)` unless it vanishes.
    pub fn push(&mut self, p: &ModuliParams, space: AtomSpace, codim: i64) -> Result<()> {
        if let Some(atom) = Atom::new(p, space, codim)? {
            self.insert(atom, 1);
        }
        Ok(())
    }

    /// Multiset union, each atom of `other` counted `times` times.
    pub fn absorb(&mut self, other: &FormalDecomposition, times: usize) {
        for (atom, mult) in other.iter() {
            self.insert(atom, mult * times);
        }
    }

    /// Removes one copy of `atom`; false if it was absent.
    pub fn remove_one(&mut self, atom: &Atom) -> bool {
        match self.counts.get_mut(atom) {
            None => false,
            Some(c) => {
                *c -= 1;
                if *c == 0 {
                    self.counts.remove(atom);
                }
                true
            }
        }
    }

    pub fn multiplicity(&self, atom: &Atom) -> usize {
        self.counts.get(atom).copied().unwrap_or(0)
    }

    /// Distinct atoms with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (Atom, usize)> + '_ {
        self.counts.iter().map(|(a, c)| (*a, *c))
    }

    /// Total number of summands, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn filtered(&self, keep: impl Fn(&Atom) -> bool) -> FormalDecomposition {
        FormalDecomposition {
            counts: self
                .counts
                .iter()
                .filter(|(a, _)| keep(a))
                .map(|(a, c)| (*a, *c))
                .collect(),
        }
    }

    /// Evaluates the direct sum under an additive invariant `rank`.
    pub fn realize(&self, rank: impl Fn(&Atom) -> BigInt) -> BigInt {
        self.iter().map(|(a, c)| rank(&a) * BigInt::from(c)).sum()
    }
}

impl FromIterator<Atom> for FormalDecomposition {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut out = FormalDecomposition::new();
        for a in iter {
            out.insert(a, 1);
        }
        out
    }
}

impl fmt::Display for FormalDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (atom, mult)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if mult > 1 {
                write!(f, "{mult}*")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

/// Which sequence of the construction an [`ExactSequenceSpec`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// The flip `M_{k-1} ~> M_k`.
    Flip { k: usize },
    /// All flips spliced together, `M_0` to `M_w`.
    Summed,
    /// `M_w` as a projective bundle over `N`.
    ProjectiveBundle,
    /// Summed sequence composed with the projective-bundle sequence.
    Theorem,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::Flip { k } => write!(f, "flip k={k}"),
            SequenceKind::Summed => f.write_str("summed"),
            SequenceKind::ProjectiveBundle => f.write_str("projective-bundle"),
            SequenceKind::Theorem => f.write_str("theorem"),
        }
    }
}

/// `0 -> kernel -> middle -> quotient -> 0`, split, at codimension `codim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSequenceSpec {
    pub kind: SequenceKind,
    pub codim: i64,
    pub kernel: FormalDecomposition,
    pub middle: FormalDecomposition,
    pub quotient: FormalDecomposition,
    pub split: bool,
}

/// The flip sequence at step `k`:
///
/// `0 -> ⊕_{r=0}^{k-2} A^{l-m+2k-r}(S^k X) -> A^l(M_{k-1}) ⊕ ⊕_{s=0}^{m-2k-2} A^{l-k-s}(S^k X) -> A^l(M_k) -> 0`
pub fn star_sequence(p: &ModuliParams, k: usize, l: i64) -> Result<ExactSequenceSpec> {
    check_range("k", k as i64, 1, p.w())?;
    let (m, ki) = (p.m(), k as i64);
    let sym = AtomSpace::SymX(k);

    let mut kernel = FormalDecomposition::new();
    for r in 0..=ki - 2 {
        kernel.push(p, sym, l - m + 2 * ki - r)?;
    }
    let mut middle = FormalDecomposition::new();
    middle.push(p, AtomSpace::M(k - 1), l)?;
    for s in 0..=m - 2 * ki - 2 {
        middle.push(p, sym, l - ki - s)?;
    }
    let mut quotient = FormalDecomposition::new();
    quotient.push(p, AtomSpace::M(k), l)?;

    Ok(ExactSequenceSpec {
        kind: SequenceKind::Flip { k },
        codim: l,
        kernel,
        middle,
        quotient,
        split: true,
    })
}

/// Splices the flip sequences `k = 1..=w` into
/// `0 -> ⊕_k S_k -> A^l(M_0) ⊕ ⊕_k R_k -> A^l(M_w) -> 0`.
pub fn summed_sequence(p: &ModuliParams, l: i64) -> Result<ExactSequenceSpec> {
    let mut kernel = FormalDecomposition::new();
    let mut middle = FormalDecomposition::new();
    middle.push(p, AtomSpace::M(0), l)?;
    let marker = |k| Atom::new(p, AtomSpace::M(k), l);
    for k in 1..=p.flips() {
        let step = star_sequence(p, k, l)?;
        kernel.absorb(&step.kernel, 1);
        let mut extra = step.middle;
        if let Some(prev) = marker(k - 1)? {
            let removed = extra.remove_one(&prev);
            debug_assert!(removed);
        }
        middle.absorb(&extra, 1);
    }
    let mut quotient = FormalDecomposition::new();
    quotient.push(p, AtomSpace::M(p.flips()), l)?;
    Ok(ExactSequenceSpec {
        kind: SequenceKind::Summed,
        codim: l,
        kernel,
        middle,
        quotient,
        split: true,
    })
}

/// `0 -> ⊕_{i=0}^{n-2} A^{l+n-1-i}(N) -> A^{n-1+l}(M_w) -> A^l(N) -> 0`.
///
/// The kernel is the same multiset as `⊕_{i=0}^{n-2} A^{l+1+i}(N)`; atoms are
/// stored in ascending codimension either way.
pub fn final_sequence(p: &ModuliParams, l: i64) -> Result<ExactSequenceSpec> {
    let n = p.n();
    let mut kernel = FormalDecomposition::new();
    for i in 0..=n - 2 {
        kernel.push(p, AtomSpace::N, l + n - 1 - i)?;
    }
    let mut middle = FormalDecomposition::new();
    middle.push(p, AtomSpace::M(p.flips()), n - 1 + l)?;
    let mut quotient = FormalDecomposition::new();
    quotient.push(p, AtomSpace::N, l)?;
    Ok(ExactSequenceSpec {
        kind: SequenceKind::ProjectiveBundle,
        codim: l,
        kernel,
        middle,
        quotient,
        split: true,
    })
}

/// Composes the summed sequence at codimension `n-1+l` with the
/// projective-bundle sequence at `l`, eliminating `M_w`:
///
/// `0 -> ⊕ A^{l+1+i}(N) ⊕ ⊕_k ⊕_r A^{n-1+l-m+2k-r}(S^k X)
///    -> A^{n-1+l}(M_0) ⊕ ⊕_k ⊕_s A^{n-1+l-k-s}(S^k X) -> A^l(N) -> 0`
pub fn theorem_sequence(p: &ModuliParams, l: i64) -> Result<ExactSequenceSpec> {
    let bundle = final_sequence(p, l)?;
    let summed = summed_sequence(p, p.n() - 1 + l)?;
    debug_assert_eq!(bundle.middle, summed.quotient);

    let mut kernel = bundle.kernel;
    kernel.absorb(&summed.kernel, 1);
    Ok(ExactSequenceSpec {
        kind: SequenceKind::Theorem,
        codim: l,
        kernel,
        middle: summed.middle,
        quotient: bundle.quotient,
        split: true,
    })
}

/// A finite resolution `0 <- A^l(N) <- Ω_0 <- Ω_1 <- ... <- Ω_t <- 0` with
/// every `Ω_i` a direct sum of Chow groups of `M_0` and symmetric powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub codim: i64,
    pub terms: Vec<FormalDecomposition>,
}

impl Resolution {
    /// Index `t` of the last nonzero term, `None` when all terms vanish.
    pub fn depth(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn is_terminal(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.iter().all(|(a, _)| a.space().is_terminal()))
    }
}

/// Resolves `A^l(N)` by expanding every `N`-atom in the kernel of the theorem
/// sequence through its own theorem sequence and splicing:
/// `Ω_0(l) = middle(l)` and
/// `Ω_{i+1}(l) = [i = 0] · kernel_S(l) ⊎ ⊎_{A^{l'}(N) ∈ kernel(l)} Ω_i(l')`.
///
/// Expansion codimensions strictly increase and vanish past `dim N`, so this
/// terminates with `t <= dim N - l + 1`.
pub fn resolution(p: &ModuliParams, l: i64) -> Result<Resolution> {
    check_range("l", l, 0, p.dim_n())?;
    let mut memo = HashMap::new();
    let terms = resolve(p, l, &mut memo)?;
    Ok(Resolution { codim: l, terms })
}

fn resolve(
    p: &ModuliParams,
    l: i64,
    memo: &mut HashMap<i64, Vec<FormalDecomposition>>,
) -> Result<Vec<FormalDecomposition>> {
    if let Some(hit) = memo.get(&l) {
        return Ok(hit.clone());
    }
    let seq = theorem_sequence(p, l)?;
    let mut terms = vec![seq.middle];
    let sym_part = seq.kernel.filtered(|a| a.space() != AtomSpace::N);
    if !sym_part.is_empty() {
        terms.push(sym_part);
    }
    for (atom, mult) in seq.kernel.iter().filter(|(a, _)| a.space() == AtomSpace::N) {
        let sub = resolve(p, atom.codim(), memo)?;
        for (i, omega) in sub.iter().enumerate() {
            if terms.len() <= i + 1 {
                terms.resize(i + 2, FormalDecomposition::new());
            }
            terms[i + 1].absorb(omega, mult);
        }
    }
    while terms.len() > 1 && terms.last().is_some_and(FormalDecomposition::is_empty) {
        terms.pop();
    }
    if terms.len() == 1 && terms[0].is_empty() {
        terms.clear();
    }
    memo.insert(l, terms.clone());
    Ok(terms)
}
