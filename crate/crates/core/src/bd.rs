//! Belavin–Drinfeld triples of type A: validation, the doubled algebra
//! `diag ⊕ Mat_n ⊕ Mat_n` with its associative triple, the canonical element,
//! and the projected R-matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{diagonal_algebra_indexed, direct_sum_many, mat_algebra, AlgebraRef};
use crate::arith::{BigRat, RatQ};
use crate::checkers::{is_hecke, is_ybe, CheckReport, Identity};
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::solutions::DiagonalHeckeParams;
use crate::tensor::Tensor2;
use crate::triples::{mat_index, sum_of_pure, validate_triple, AssocTriple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BdViolation {
    NotBijective(String),
    /// Simple roots `i, j ∈ Γ₁` whose adjacency τ does not preserve.
    BreaksAdjacency(usize, usize),
    /// `i, i+1 ∈ Γ₁` mapped to `τ(i), τ(i)−1`.
    BreaksOrientation(usize),
    /// The τ-orbit of this simple root never leaves Γ₁.
    NotNilpotent(usize),
    /// The τ̂-orbit of this diagonal idempotent never leaves Γ̂₁.
    IdempotentOrbitStuck(usize),
}

impl BdViolation {
    pub fn name(&self) -> &'static str {
        match self {
            BdViolation::NotBijective(_) => "NotBijective",
            BdViolation::BreaksAdjacency(..) => "BreaksAdjacency",
            BdViolation::BreaksOrientation(_) => "BreaksOrientation",
            BdViolation::NotNilpotent(_) => "NotNilpotent",
            BdViolation::IdempotentOrbitStuck(_) => "IdempotentOrbitStuck",
        }
    }
}

impl fmt::Display for BdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BdViolation::NotBijective(why) => write!(f, "NotBijective: {why}"),
            BdViolation::BreaksAdjacency(i, j) => {
                write!(f, "BreaksAdjacency: roots {i} and {j}")
            }
            BdViolation::BreaksOrientation(i) => {
                write!(f, "BreaksOrientation: roots {i} and {} are reversed", i + 1)
            }
            BdViolation::NotNilpotent(i) => write!(f, "NotNilpotent: orbit of root {i} stays in gamma1"),
            BdViolation::IdempotentOrbitStuck(i) => {
                write!(f, "IdempotentOrbitStuck: orbit of diagonal unit {i} stays in the extended gamma1")
            }
        }
    }
}

/// `(Γ₁, Γ₂, τ)` over the simple roots `1..n−1` of `sl_n`, indexed by the
/// matrix size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdTriple {
    pub n: usize,
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub tau: Vec<(usize, usize)>,
}

impl BdTriple {
    pub fn new(n: usize, gamma1: Vec<usize>, gamma2: Vec<usize>, tau: Vec<(usize, usize)>) -> Self {
        BdTriple { n, gamma1, gamma2, tau }
    }

    /// Γ₁ and Γ₂ read off as the domain and image of `tau`.
    pub fn from_map(n: usize, tau: &[(usize, usize)]) -> Self {
        BdTriple {
            n,
            gamma1: tau.iter().map(|p| p.0).collect(),
            gamma2: tau.iter().map(|p| p.1).collect(),
            tau: tau.to_vec(),
        }
    }

    pub fn empty(n: usize) -> Self {
        BdTriple::from_map(n, &[])
    }

    /// The maximal shift `α_i ↦ α_{i+1}`, `i = 1..n−2`.
    pub fn cremmer_gervais(n: usize) -> Self {
        let tau: Vec<_> = (1..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        BdTriple::from_map(n, &tau)
    }
}

/// A positive root `ε_i − ε_j`, `i < j`, with `e = e^i_j` and `f = e^j_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootA {
    pub i: usize,
    pub j: usize,
}

impl RootA {
    pub fn e_index(self, n: usize) -> usize {
        mat_index(n, self.i, self.j)
    }

    pub fn f_index(self, n: usize) -> usize {
        mat_index(n, self.j, self.i)
    }
}

pub fn positive_roots(n: usize) -> Vec<RootA> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(RootA { i, j });
        }
    }
    out
}

/// A maximal run `lo..=hi` of the extended Γ̂₁ and its shift under τ̂.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Block {
    lo: usize,
    hi: usize,
    shift: i64,
}

impl Block {
    fn contains(&self, i: usize) -> bool {
        self.lo <= i && i <= self.hi
    }

    fn image_contains(&self, i: usize) -> bool {
        let i = i as i64;
        self.lo as i64 + self.shift <= i && i <= self.hi as i64 + self.shift
    }
}

fn shifted(i: usize, s: i64) -> usize {
    (i as i64 + s) as usize
}

/// The extension of τ to the diagonal idempotents `η_1..η_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentData {
    pub n: usize,
    pub gamma1_hat: BTreeSet<usize>,
    pub gamma2_hat: BTreeSet<usize>,
    pub tau_hat: BTreeMap<usize, usize>,
    /// Smallest `m > 0` with `τ̂^m(η) ∉ Γ̂₁`, for `η ∈ Γ̂₁`.
    pub m: BTreeMap<usize, usize>,
    blocks: Vec<Block>,
}

impl IdempotentData {
    /// `m(η)`, taken as 0 outside Γ̂₁.
    pub fn m_of(&self, eta: usize) -> usize {
        self.m.get(&eta).copied().unwrap_or(0)
    }

    /// `η, τ̂(η), …, τ̂^{m(η)}(η)`.
    pub fn orbit(&self, eta: usize) -> Vec<usize> {
        let mut out = vec![eta];
        let mut cur = eta;
        for _ in 0..self.m_of(eta) {
            cur = self.tau_hat[&cur];
            out.push(cur);
        }
        out
    }

    /// Γ̂∖Γ̂₂ in increasing order; indexes the diagonal `D`.
    pub fn representatives(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| !self.gamma2_hat.contains(i)).collect()
    }

    pub fn card(&self) -> usize {
        self.gamma1_hat.len()
    }

    pub fn tau_hat_inv(&self, eta: usize) -> Option<usize> {
        self.tau_hat.iter().find(|(_, &v)| v == eta).map(|(&k, _)| k)
    }

    fn block1(&self, i: usize, j: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.contains(i) && b.contains(j))
    }

    fn block2(&self, i: usize, j: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.image_contains(i) && b.image_contains(j))
    }

    /// `e^i_j` lies in a single block of the envelope of Γ̂₁.
    pub fn same_block1(&self, i: usize, j: usize) -> bool {
        self.block1(i, j).is_some()
    }

    pub fn same_block2(&self, i: usize, j: usize) -> bool {
        self.block2(i, j).is_some()
    }

    /// τ on roots of the subsystem generated by Γ₁.
    pub fn tau_root(&self, g: RootA) -> Option<RootA> {
        self.block1(g.i, g.j).map(|b| RootA {
            i: shifted(g.i, b.shift),
            j: shifted(g.j, b.shift),
        })
    }

    pub fn tau_inv_root(&self, g: RootA) -> Option<RootA> {
        self.block2(g.i, g.j).map(|b| RootA {
            i: shifted(g.i, -b.shift),
            j: shifted(g.j, -b.shift),
        })
    }

    /// `γ, τγ, …` up to the first root outside Δ₁ (so `m₁(γ) + 1` entries).
    pub fn forward_chain(&self, g: RootA) -> Vec<RootA> {
        let mut out = vec![g];
        let mut cur = g;
        while let Some(nx) = self.tau_root(cur) {
            out.push(nx);
            cur = nx;
        }
        out
    }

    pub fn backward_chain(&self, g: RootA) -> Vec<RootA> {
        let mut out = vec![g];
        let mut cur = g;
        while let Some(nx) = self.tau_inv_root(cur) {
            out.push(nx);
            cur = nx;
        }
        out
    }
}

fn root_components(roots: &BTreeSet<usize>) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &r in roots {
        match out.last_mut() {
            Some(last) if last.1 + 1 == r => last.1 = r,
            _ => out.push((r, r)),
        }
    }
    out
}

fn collect_violations(bd: &BdTriple) -> (Vec<BdViolation>, Option<IdempotentData>) {
    let n = bd.n;
    let mut v = Vec::new();
    let in_range = |r: usize| (1..n).contains(&r);
    for &r in bd.gamma1.iter().chain(&bd.gamma2).chain(bd.tau.iter().flat_map(|p| [&p.0, &p.1])) {
        if !in_range(r) {
            v.push(BdViolation::NotBijective(format!("root index {r} outside 1..{}", n - 1)));
        }
    }
    let g1: BTreeSet<usize> = bd.gamma1.iter().copied().collect();
    let g2: BTreeSet<usize> = bd.gamma2.iter().copied().collect();
    if g1.len() != bd.gamma1.len() || g2.len() != bd.gamma2.len() {
        v.push(BdViolation::NotBijective("repeated root in gamma1 or gamma2".into()));
    }
    let mut map = BTreeMap::new();
    let mut is_function = true;
    for &(a, b) in &bd.tau {
        if map.insert(a, b).is_some() {
            v.push(BdViolation::NotBijective(format!("root {a} has two images")));
            is_function = false;
        }
    }
    let dom: BTreeSet<usize> = map.keys().copied().collect();
    let img: BTreeSet<usize> = map.values().copied().collect();
    if dom != g1 {
        v.push(BdViolation::NotBijective("domain of tau differs from gamma1".into()));
    }
    if img != g2 {
        v.push(BdViolation::NotBijective("image of tau differs from gamma2".into()));
    }
    if img.len() != map.len() {
        v.push(BdViolation::NotBijective("tau is not injective".into()));
    }
    if !is_function {
        return (v, None);
    }

    let mut shape_ok = true;
    let keys: Vec<usize> = dom.iter().copied().collect();
    for (x, &i) in keys.iter().enumerate() {
        for &j in &keys[x + 1..] {
            let (ti, tj) = (map[&i], map[&j]);
            if (j - i == 1) != (ti.abs_diff(tj) == 1) {
                v.push(BdViolation::BreaksAdjacency(i, j));
                shape_ok = false;
            } else if j == i + 1 && tj + 1 == ti {
                v.push(BdViolation::BreaksOrientation(i));
                shape_ok = false;
            }
        }
    }
    for &a in &keys {
        let mut cur = a;
        let mut left = false;
        for _ in 0..=keys.len() {
            match map.get(&cur) {
                Some(&nx) => cur = nx,
                None => {
                    left = true;
                    break;
                }
            }
        }
        if !left {
            v.push(BdViolation::NotNilpotent(a));
        }
    }
    if !shape_ok || v.iter().any(|x| matches!(x, BdViolation::NotBijective(_))) {
        return (v, None);
    }

    let blocks: Vec<Block> = root_components(&dom)
        .into_iter()
        .map(|(a, b)| Block {
            lo: a,
            hi: b + 1,
            shift: map[&a] as i64 - a as i64,
        })
        .collect();
    let mut tau_hat = BTreeMap::new();
    for b in &blocks {
        for i in b.lo..=b.hi {
            tau_hat.insert(i, shifted(i, b.shift));
        }
    }
    let gamma1_hat: BTreeSet<usize> = tau_hat.keys().copied().collect();
    let gamma2_hat: BTreeSet<usize> = tau_hat.values().copied().collect();
    let mut m = BTreeMap::new();
    let mut stuck = false;
    for &eta in &gamma1_hat {
        let mut cur = eta;
        let mut steps = 0;
        while let Some(&nx) = tau_hat.get(&cur) {
            cur = nx;
            steps += 1;
            if steps > n {
                break;
            }
        }
        if steps > n {
            v.push(BdViolation::IdempotentOrbitStuck(eta));
            stuck = true;
        } else {
            m.insert(eta, steps);
        }
    }
    if stuck {
        return (v, None);
    }
    let data = IdempotentData {
        n,
        gamma1_hat,
        gamma2_hat,
        tau_hat,
        m,
        blocks,
    };
    (v, Some(data))
}

/// Checks every defining condition of the triple and reports all violations
/// at once; on success derives the idempotent data.
pub fn validate_bd(bd: &BdTriple) -> Result<IdempotentData> {
    if bd.n < 2 {
        return Err(Error::TooSmall("a BD triple needs n >= 2".into()));
    }
    match collect_violations(bd) {
        (v, Some(data)) if v.is_empty() => Ok(data),
        (v, _) => Err(Error::InvalidBd(v)),
    }
}

/// [`validate_bd`] as a structural report.
pub fn check_bd(bd: &BdTriple) -> CheckReport {
    let failures = match validate_bd(bd) {
        Ok(_) => Vec::new(),
        Err(Error::InvalidBd(v)) => v.iter().map(|x| x.to_string()).collect(),
        Err(e) => vec![e.to_string()],
    };
    CheckReport::structural(Identity::Bd, failures)
}

/// `σ ≺ γ` iff `τ^k(σ) = γ` for some `k > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecOrder {
    pairs: BTreeSet<(RootA, RootA)>,
}

impl PrecOrder {
    pub fn new(data: &IdempotentData) -> Self {
        let mut pairs = BTreeSet::new();
        for g in positive_roots(data.n) {
            for later in data.forward_chain(g).into_iter().skip(1) {
                pairs.insert((g, later));
            }
        }
        PrecOrder { pairs }
    }

    pub fn precedes(&self, s: RootA, g: RootA) -> bool {
        self.pairs.contains(&(s, g))
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(RootA, RootA)> {
        self.pairs.iter()
    }

    pub fn is_strict_partial_order(&self) -> bool {
        let irreflexive = self.pairs.iter().all(|(a, b)| a != b);
        let transitive = self.pairs.iter().all(|&(a, b)| {
            self.pairs
                .iter()
                .filter(|(c, _)| *c == b)
                .all(|&(_, d)| self.pairs.contains(&(a, d)))
        });
        irreflexive && transitive
    }
}

/// The doubled algebra `𝔐 = diag(Γ̂∖Γ̂₂) ⊕ Mat_n ⊕ (−)Mat_n` with its
/// nilpotent parts, diagonal basis and associative triple.
#[derive(Clone, Debug)]
pub struct BdModel {
    bd: BdTriple,
    data: IdempotentData,
    reps: Vec<usize>,
    alg: AlgebraRef,
    mat: AlgebraRef,
    d_basis: Vec<Vector>,
    n_plus: Vec<Vector>,
    n_minus: Vec<Vector>,
    triple: AssocTriple,
}

/// Row-of-coordinates helper for `𝔐`.
struct Slots<'a> {
    n: usize,
    reps: &'a [usize],
    dim: usize,
}

impl Slots<'_> {
    fn d(&self, eta: usize) -> usize {
        self.reps.iter().position(|&r| r == eta).expect("representative")
    }

    fn first(&self, i: usize, j: usize) -> usize {
        self.reps.len() + mat_index(self.n, i, j)
    }

    fn second(&self, i: usize, j: usize) -> usize {
        self.reps.len() + self.n * self.n + mat_index(self.n, i, j)
    }

    fn vec(&self, entries: &[(usize, RatQ)]) -> Vector {
        let mut v = zero_vec(self.dim);
        for (k, c) in entries {
            v[*k] = v[*k].add_ref(c);
        }
        v
    }
}

fn one() -> RatQ {
    RatQ::one()
}

impl BdModel {
    pub fn build(bd: &BdTriple) -> Result<Self> {
        let data = validate_bd(bd)?;
        let n = bd.n;
        let reps = data.representatives();
        let diag = diagonal_algebra_indexed(&reps, format!("dhat:{n}"))?;
        let mat = mat_algebra(n)?;
        let alg = Arc::new(direct_sum_many(&[(&diag, 1), (&mat, 1), (&mat, -1)])?);
        let k = reps.len();
        if alg.dim() != k + 2 * n * n || k + data.card() != n {
            return Err(Error::InternalInconsistency("doubled algebra has the wrong dimension".into()));
        }
        let sl = Slots { n, reps: &reps, dim: alg.dim() };

        let mut n_minus = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                n_minus.push(sl.vec(&[(sl.first(i, j), one()), (sl.second(i, j), one())]));
            }
        }
        let mut n_plus: Vec<Vector> = reps
            .iter()
            .map(|&eta| sl.vec(&[(sl.d(eta), one()), (sl.second(eta, eta), one())]))
            .collect();
        for i in 1..=n {
            for j in 1..=n {
                if let Some(b) = data.block1(i, j) {
                    let (ti, tj) = (shifted(i, b.shift), shifted(j, b.shift));
                    n_plus.push(sl.vec(&[(sl.first(i, j), one()), (sl.second(ti, tj), one())]));
                } else if i < j {
                    n_plus.push(sl.vec(&[(sl.first(i, j), one())]));
                }
                if i > j && !data.same_block2(i, j) {
                    n_plus.push(sl.vec(&[(sl.second(i, j), one())]));
                }
            }
        }

        let d_basis: Vec<Vector> = reps
            .iter()
            .map(|&eta| {
                let mut e = vec![(sl.d(eta), one())];
                for x in data.orbit(eta) {
                    e.push((sl.first(x, x), one()));
                    e.push((sl.second(x, x), one()));
                }
                sl.vec(&e)
            })
            .collect();

        let dim = alg.dim();
        let triple = AssocTriple::from_parts(
            alg.clone(),
            Subspace::span(dim, d_basis.clone())?,
            Subspace::span(dim, n_plus.clone())?,
            Subspace::span(dim, n_minus.clone())?,
        )?;
        let model = BdModel {
            bd: bd.clone(),
            data,
            reps,
            alg,
            mat: Arc::new(mat),
            d_basis,
            n_plus,
            n_minus,
            triple,
        };
        model.check_d_basis()?;
        Ok(model)
    }

    pub fn bd(&self) -> &BdTriple {
        &self.bd
    }

    pub fn data(&self) -> &IdempotentData {
        &self.data
    }

    /// Γ̂∖Γ̂₂, the index set of the diagonal basis.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn mat_algebra(&self) -> &AlgebraRef {
        &self.mat
    }

    pub fn d_basis(&self) -> &[Vector] {
        &self.d_basis
    }

    pub fn n_plus(&self) -> &[Vector] {
        &self.n_plus
    }

    pub fn n_minus(&self) -> &[Vector] {
        &self.n_minus
    }

    pub fn triple(&self) -> &AssocTriple {
        &self.triple
    }

    fn slots(&self) -> Slots<'_> {
        Slots {
            n: self.bd.n,
            reps: &self.reps,
            dim: self.alg.dim(),
        }
    }

    /// Orthonormality of the diagonal basis, and an independent derivation
    /// of `D` as the diagonal part of `𝔅 + 𝔡₁ + 𝔡₂` with full-rank
    /// projections to `𝔡₁` and `𝔡₂`.
    fn check_d_basis(&self) -> Result<()> {
        let form = self.alg.form()?;
        let k = self.reps.len();
        if form.pairing(&self.d_basis, &self.d_basis) != Matrix::identity(k) {
            return Err(Error::InternalInconsistency("diagonal basis is not orthonormal".into()));
        }

        let n = self.bd.n;
        let nn = n * n;
        let amb = 2 * nn;
        let data = &self.data;
        let pair = |a: &[(usize, usize)], b: &[(usize, usize)]| {
            let mut v = zero_vec(amb);
            for &(i, j) in a {
                v[mat_index(n, i, j)] = one();
            }
            for &(i, j) in b {
                v[nn + mat_index(n, i, j)] = one();
            }
            v
        };
        // Basis of 𝔅, then 𝔡₁ = (Γ̂∖Γ̂₁, 0), then 𝔡₂ = (0, Γ̂∖Γ̂₂).
        let mut w = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if let Some(b) = data.block1(i, j) {
                    w.push(pair(&[(i, j)], &[(shifted(i, b.shift), shifted(j, b.shift))]));
                } else if i < j {
                    w.push(pair(&[(i, j)], &[]));
                }
                if i > j && !data.same_block2(i, j) {
                    w.push(pair(&[], &[(i, j)]));
                }
            }
        }
        let n_b = w.len();
        let not1: Vec<usize> = (1..=n).filter(|i| !data.gamma1_hat.contains(i)).collect();
        for &x in &not1 {
            w.push(pair(&[(x, x)], &[]));
        }
        for &x in &self.reps {
            w.push(pair(&[], &[(x, x)]));
        }
        let w_space = Subspace::span(amb, w.clone())?;
        if w_space.dim() != w.len() {
            return Err(Error::InternalInconsistency("B + d1 + d2 is not direct".into()));
        }
        let diag_embed = Subspace::span(
            amb,
            (1..=n)
                .flat_map(|i| (1..=n).map(move |j| (i, j)))
                .map(|(i, j)| pair(&[(i, j)], &[(i, j)]))
                .collect(),
        )?;
        let small_d = w_space.intersect(&diag_embed)?;
        if small_d.dim() != k {
            return Err(Error::InternalInconsistency(format!(
                "diagonal part has dimension {}, expected {k}",
                small_d.dim()
            )));
        }
        let mut cols = Matrix::zeros(amb, w.len());
        for (c, v) in w.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    cols.set(r, c, x.clone());
                }
            }
        }
        let coords = |x: &[RatQ]| -> Result<Vector> {
            cols.solve(x)
                .ok_or_else(|| Error::InternalInconsistency("vector outside B + d1 + d2".into()))
        };
        let d1 = n_b..n_b + not1.len();
        let d2 = n_b + not1.len()..w.len();
        let mut g1_rows = Vec::new();
        let mut g2_rows = Vec::new();
        for x in small_d.basis() {
            let c = coords(x)?;
            g1_rows.push(c[d1.clone()].to_vec());
            g2_rows.push(c[d2.clone()].to_vec());
        }
        let rank = |rows: Vec<Vector>, cols: usize| Matrix::from_rows(cols, rows).map(|m| m.rank());
        if rank(g1_rows, not1.len())? != k || rank(g2_rows, k)? != k {
            return Err(Error::InternalInconsistency("projections of D do not have full rank".into()));
        }
        for d in &self.d_basis {
            let x: Vector = d[k..].to_vec();
            if !small_d.contains(&x) {
                return Err(Error::InternalInconsistency("diagonal basis vector outside D".into()));
            }
            if coords(&x)?[d2.clone()] != d[..k] {
                return Err(Error::InternalInconsistency(
                    "first slot of a diagonal basis vector is not its d2 projection".into(),
                ));
            }
        }
        Ok(())
    }

    /// The explicit canonical element as `(N₊ basis, dual N₋ vectors)`: two
    /// root-vector families and the diagonal sector.
    fn explicit_dual_pairs(&self) -> (Vec<Vector>, Vec<Vector>) {
        let n = self.bd.n;
        let data = &self.data;
        let sl = self.slots();
        let minus = |i: usize, j: usize, c: RatQ| [(sl.first(i, j), c.clone()), (sl.second(i, j), c)];
        let mut ps = Vec::new();
        let mut ms = Vec::new();
        for g in positive_roots(n) {
            // (0, e_γ, θ₁ e_τγ) ⊗ Σ_k (0, f, f) over the backward chain of γ.
            let mut p = vec![(sl.first(g.i, g.j), one())];
            if let Some(t) = data.tau_root(g) {
                p.push((sl.second(t.i, t.j), one()));
            }
            let m: Vec<_> = data.backward_chain(g).into_iter().flat_map(|s| minus(s.j, s.i, one())).collect();
            ps.push(sl.vec(&p));
            ms.push(sl.vec(&m));
            // (0, θ₂ f_{τ⁻¹γ}, f_γ) ⊗ −Σ_k (0, e, e) over the forward chain.
            let mut p = vec![(sl.second(g.j, g.i), one())];
            if let Some(t) = data.tau_inv_root(g) {
                p.push((sl.first(t.j, t.i), one()));
            }
            let m: Vec<_> = data
                .forward_chain(g)
                .into_iter()
                .flat_map(|s| minus(s.i, s.j, -one()))
                .collect();
            ps.push(sl.vec(&p));
            ms.push(sl.vec(&m));
        }
        // Diagonal sector: (η, 0, η) for η ∉ Γ̂₂ and (0, τ̂⁻¹η, η) for η ∈ Γ̂₂,
        // each paired with −Σ_{k=0}^{m(η)} (0, τ̂^kη, τ̂^kη).
        for eta in 1..=n {
            let p = match data.tau_hat_inv(eta) {
                None => vec![(sl.d(eta), one()), (sl.second(eta, eta), one())],
                Some(pre) => vec![(sl.first(pre, pre), one()), (sl.second(eta, eta), one())],
            };
            let m: Vec<_> = data.orbit(eta).into_iter().flat_map(|x| minus(x, x, -one())).collect();
            ps.push(sl.vec(&p));
            ms.push(sl.vec(&m));
        }
        (ps, ms)
    }

    /// The canonical element from its explicit families, checked for duality
    /// and against the generic canonical element of the `N±` pairing.
    pub fn canonical_q(&self) -> Result<Tensor2> {
        let (ps, ms) = self.explicit_dual_pairs();
        let nn = self.bd.n * self.bd.n;
        let form = self.triple.form();
        if form.pairing(&ps, &ms) != Matrix::identity(nn) {
            return Err(Error::InternalInconsistency("explicit N+/N- bases are not dual".into()));
        }
        let plus = self.triple.n_plus();
        let minus = self.triple.n_minus();
        if ps.iter().any(|p| !plus.contains(p)) || ms.iter().any(|m| !minus.contains(m)) {
            return Err(Error::InternalInconsistency("explicit families leave N+ or N-".into()));
        }
        let q = sum_of_pure(&self.alg, &ps, &ms);
        if q != self.triple.q()? {
            return Err(Error::InternalInconsistency(
                "explicit canonical element differs from the generic one".into(),
            ));
        }
        Ok(q)
    }

    /// `(π⊗π)` for `π` the projection onto the first matrix summand.
    pub fn project(&self, t: &Tensor2) -> Result<Tensor2> {
        let n = self.bd.n;
        let k = self.reps.len();
        let images: Vec<Vector> = (0..self.alg.dim())
            .map(|a| {
                if (k..k + n * n).contains(&a) {
                    unit_vec(n * n, a - k)
                } else {
                    zero_vec(n * n)
                }
            })
            .collect();
        t.map_legs(&images, self.mat.clone())
    }

    /// Orbit sum `Σ_{k=0}^{m(η)} τ̂^k(η)` in `Mat_n`.
    fn orbit_sum(&self, eta: usize) -> Vector {
        let n = self.bd.n;
        let mut v = zero_vec(n * n);
        for x in self.data.orbit(eta) {
            v[mat_index(n, x, x)] = one();
        }
        v
    }

    /// `(π⊗π)(S) = Σ a^{ij} O_i ⊗ O_j` with `O` the orbit sums.
    pub fn s_proj_closed(&self, params: &DiagonalHeckeParams) -> Result<Tensor2> {
        self.check_params(params)?;
        let mut s = Tensor2::zero(self.mat.clone());
        for (a, &i) in self.reps.iter().enumerate() {
            for (b, &j) in self.reps.iter().enumerate() {
                let t = Tensor2::pure(self.mat.clone(), &self.orbit_sum(i), &self.orbit_sum(j));
                s = s.add(&t.scale(&params.coefficient(a, b)))?;
            }
        }
        Ok(s)
    }

    /// `(π⊗π)(Q) = −Σ_{η∈Γ̂₁} Σ_{k=1}^{m(η)} η⊗τ̂^kη + Σ e_γ⊗f_γ
    /// + Σ_{σ≺γ} (e_γ⊗f_σ − f_σ⊗e_γ)`.
    pub fn q_proj_closed(&self) -> Result<Tensor2> {
        q_proj_from(&self.data, self.mat.clone())
    }

    fn check_params(&self, params: &DiagonalHeckeParams) -> Result<()> {
        if params.k() != self.reps.len() {
            return Err(Error::ShapeError(format!(
                "diagonal has {} idempotents, parameters have {}",
                self.reps.len(),
                params.k()
            )));
        }
        Ok(())
    }
}

fn q_proj_from(data: &IdempotentData, mat: AlgebraRef) -> Result<Tensor2> {
    let n = data.n;
    let mut q = Tensor2::zero(mat);
    for &eta in &data.gamma1_hat {
        for x in data.orbit(eta).into_iter().skip(1) {
            q.add_term((mat_index(n, eta, eta), mat_index(n, x, x)), -one())?;
        }
    }
    for g in positive_roots(n) {
        q.add_term((g.e_index(n), g.f_index(n)), one())?;
    }
    for &(s, g) in PrecOrder::new(data).pairs() {
        q.add_term((g.e_index(n), s.f_index(n)), one())?;
        q.add_term((s.f_index(n), g.e_index(n)), -one())?;
    }
    Ok(q)
}

/// The doubled algebra with its triple; fails unless every triple condition
/// holds.
pub fn build_big_triple(bd: &BdTriple) -> Result<AssocTriple> {
    let model = BdModel::build(bd)?;
    let report = validate_triple(model.triple());
    if !report.passed {
        return Err(Error::InvalidTriple(report.failures));
    }
    Ok(model.triple)
}

#[allow(non_snake_case)]
pub fn canonical_Q_bd(bd: &BdTriple) -> Result<Tensor2> {
    BdModel::build(bd)?.canonical_q()
}

/// Orthonormal basis `d_η = (η, Σ_k τ̂^kη, Σ_k τ̂^kη)` of `D`, `η ∈ Γ̂∖Γ̂₂`.
pub fn d_basis(bd: &BdTriple) -> Result<Vec<Vector>> {
    Ok(BdModel::build(bd)?.d_basis)
}

/// Result of the BD pipeline.
#[derive(Clone, Debug)]
pub struct BdAssembly {
    /// `S + Q` over the doubled algebra.
    pub r_big: Tensor2,
    /// `ω·(π⊗π)(S + Q)` over `Mat_n`.
    pub r_proj: Tensor2,
    /// YBE of `r_big`, when it was run.
    pub big_ybe: Option<CheckReport>,
    pub proj_ybe: CheckReport,
}

/// Assembles `R = S + Q` and its projection, running the big-algebra YBE
/// check for `n ≤ 3`.
pub fn assemble_bd_r(bd: &BdTriple, params: &DiagonalHeckeParams) -> Result<BdAssembly> {
    assemble_bd_r_with(bd, params, bd.n <= 3)
}

pub fn assemble_bd_r_with(bd: &BdTriple, params: &DiagonalHeckeParams, big_ybe: bool) -> Result<BdAssembly> {
    let model = BdModel::build(bd)?;
    model.check_params(params)?;
    let alg = model.algebra().clone();
    let s = crate::solutions::diagonal_hecke_on(params, &alg, model.d_basis())?;
    let c = RatQ::inv_omega().pow(2);
    let hecke = is_hecke(&s, &model.triple.sigma_d()?, &c)?;
    if !hecke.passed {
        return Err(Error::Precondition(Box::new(hecke)));
    }
    let r_big = s.add(&model.canonical_q()?)?;
    let big = if big_ybe {
        let rep = is_ybe(&r_big);
        if !rep.passed {
            return Err(Error::InternalInconsistency(format!(
                "S + Q fails YBE in the doubled algebra with {} residual terms",
                rep.residual_len()
            )));
        }
        Some(rep)
    } else {
        None
    };
    let omega = RatQ::omega();
    let r_proj = model.project(&r_big)?.scale(&omega);
    let closed = model.s_proj_closed(params)?.add(&model.q_proj_closed()?)?.scale(&omega);
    if r_proj != closed {
        return Err(Error::InternalInconsistency(
            "projected S + Q differs from the closed formulas".into(),
        ));
    }
    let proj_ybe = is_ybe(&r_proj);
    if !proj_ybe.passed {
        return Err(Error::InternalInconsistency(format!(
            "projected R fails YBE with {} residual terms",
            proj_ybe.residual_len()
        )));
    }
    Ok(BdAssembly {
        r_big,
        r_proj,
        big_ybe: big,
        proj_ybe,
    })
}

/// `λ·1⊗1 + (π⊗π)(Q)` for the maximal shift triple.
pub fn cremmer_gervais(n: usize, lam: &RatQ) -> Result<Tensor2> {
    if n < 3 {
        return Err(Error::TooSmall("the maximal shift triple needs n >= 3".into()));
    }
    let data = validate_bd(&BdTriple::cremmer_gervais(n))?;
    let mat = Arc::new(mat_algebra(n)?);
    let one = Tensor2::one(mat.clone());
    one.scale(lam).add(&q_proj_from(&data, mat)?)
}

/// First-order term `r` of `R = 1⊗1 + (q−1) r + …`: requires `R(1) = 1⊗1`.
/// The coefficients of `r` are constants.
pub fn classical_limit(r: &Tensor2) -> Result<Tensor2> {
    let q1 = BigRat::from_integer(1.into());
    let at_one = r.map_coeffs(|c| Ok(RatQ::from_bigrat(&c.eval(&q1)?)))?;
    if at_one != Tensor2::one(r.algebra().clone()) {
        return Err(Error::NoClassicalLimit);
    }
    r.map_coeffs(|c| Ok(RatQ::from_bigrat(&c.derivative_at_one()?)))
}
