//! Sparse elements of `A⊗A` and `A⊗A⊗A`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraRef};
use crate::arith::RatQ;
use crate::error::{Error, Result};
use crate::linalg::{zero_vec, Matrix, Vector};

pub type Key2 = (usize, usize);
pub type Key3 = (usize, usize, usize);

#[derive(Clone)]
pub struct Tensor2 {
    alg: AlgebraRef,
    terms: BTreeMap<Key2, RatQ>,
}

#[derive(Clone)]
pub struct Tensor3 {
    alg: AlgebraRef,
    terms: BTreeMap<Key3, RatQ>,
}

pub(crate) fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn accumulate<K: std::hash::Hash + Eq>(acc: &mut HashMap<K, RatQ>, key: K, c: RatQ) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&key) {
        Some(v) => *v = v.add_ref(&c),
        None => {
            acc.insert(key, c);
        }
    }
}

fn collect<K: Ord>(acc: HashMap<K, RatQ>) -> BTreeMap<K, RatQ> {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl PartialEq for Tensor2 {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}
impl Eq for Tensor2 {}

impl PartialEq for Tensor3 {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}
impl Eq for Tensor3 {}

impl fmt::Debug for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((i, j), c)| format!("({c}) {}⊗{}", self.alg.label(*i), self.alg.label(*j)))
            .collect();
        write!(f, "Tensor2[{}]", parts.join(" + "))
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((i, j, k), c)| {
                format!(
                    "({c}) {}⊗{}⊗{}",
                    self.alg.label(*i),
                    self.alg.label(*j),
                    self.alg.label(*k)
                )
            })
            .collect();
        write!(f, "Tensor3[{}]", parts.join(" + "))
    }
}

/// Sparse expansion of a product of two basis elements, or of a single one
/// when the other factor is the unit.
fn leg_factor(alg: &Algebra, x: Option<usize>, y: Option<usize>) -> Vec<(usize, RatQ)> {
    match (x, y) {
        (Some(a), Some(b)) => alg.mul_basis(a, b).to_vec(),
        (Some(a), None) | (None, Some(a)) => vec![(a, RatQ::one())],
        (None, None) => sparse_unit(alg),
    }
}

fn sparse_unit(alg: &Algebra) -> Vec<(usize, RatQ)> {
    alg.unit()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

impl Tensor2 {
    pub fn zero(alg: AlgebraRef) -> Self {
        Tensor2 {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(alg: AlgebraRef, terms: impl IntoIterator<Item = (Key2, RatQ)>) -> Result<Self> {
        let mut t = Self::zero(alg);
        for (k, c) in terms {
            t.add_term(k, c)?;
        }
        Ok(t)
    }

    /// `1⊗1`.
    pub fn one(alg: AlgebraRef) -> Self {
        let u = alg.unit().clone();
        Self::pure(alg, &u, &u)
    }

    /// `x⊗y` for coordinate vectors.
    pub fn pure(alg: AlgebraRef, x: &[RatQ], y: &[RatQ]) -> Self {
        let mut terms = BTreeMap::new();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    terms.insert((i, j), a.mul_ref(b));
                }
            }
        }
        Tensor2 { alg, terms }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Key2, RatQ> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> RatQ {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, (i, j): Key2, c: RatQ) -> Result<()> {
        let d = self.alg.dim();
        if i >= d || j >= d {
            return Err(Error::ShapeError(format!("index ({i},{j}) out of range for dimension {d}")));
        }
        if c.is_zero() {
            return Ok(());
        }
        let v = self.terms.entry((i, j)).or_default();
        *v = v.add_ref(&c);
        if v.is_zero() {
            self.terms.remove(&(i, j));
        }
        Ok(())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&RatQ::int(-1))
    }

    pub fn scale(&self, c: &RatQ) -> Self {
        if c.is_zero() {
            return Self::zero(self.alg.clone());
        }
        Tensor2 {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul_ref(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc = HashMap::new();
        for ((i, j), c) in &self.terms {
            for ((k, l), d) in &other.terms {
                let left = self.alg.mul_basis(*i, *k);
                if left.is_empty() {
                    continue;
                }
                let right = self.alg.mul_basis(*j, *l);
                if right.is_empty() {
                    continue;
                }
                let cd = c.mul_ref(d);
                for (a, x) in left {
                    for (b, y) in right {
                        accumulate(&mut acc, (*a, *b), cd.mul_ref(&x.mul_ref(y)));
                    }
                }
            }
        }
        Ok(Tensor2 {
            alg: self.alg.clone(),
            terms: collect(acc),
        })
    }

    pub fn flip(&self) -> Self {
        Tensor2 {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&RatQ) -> Result<RatQ>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.insert(*k, v);
            }
        }
        Ok(Tensor2 {
            alg: self.alg.clone(),
            terms,
        })
    }

    /// Re-expresses the tensor over another algebra of the same dimension whose
    /// basis is identified index-by-index.
    pub fn with_algebra(&self, alg: AlgebraRef) -> Result<Self> {
        if alg.dim() != self.alg.dim() {
            return Err(Error::ShapeError("algebra dimensions differ".into()));
        }
        Ok(Tensor2 {
            alg,
            terms: self.terms.clone(),
        })
    }

    /// `(φ⊗φ)(self)` where `images[i]` is the image of basis element `i`.
    pub fn map_legs(&self, images: &[Vector], target: AlgebraRef) -> Result<Self> {
        if images.len() != self.alg.dim() || images.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::ShapeError("leg map has the wrong shape".into()));
        }
        let mut acc = HashMap::new();
        for ((i, j), c) in &self.terms {
            for (a, x) in images[*i].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let cx = c.mul_ref(x);
                for (b, y) in images[*j].iter().enumerate() {
                    if !y.is_zero() {
                        accumulate(&mut acc, (a, b), cx.mul_ref(y));
                    }
                }
            }
        }
        Ok(Tensor2 {
            alg: target,
            terms: collect(acc),
        })
    }

    /// Coordinates in the `dim²` basis `b_i⊗b_j` (index `i·dim + j`).
    pub fn to_vector(&self) -> Vector {
        let d = self.alg.dim();
        let mut v = zero_vec(d * d);
        for ((i, j), c) in &self.terms {
            v[i * d + j] = c.clone();
        }
        v
    }

    pub fn from_vector(alg: AlgebraRef, v: &[RatQ]) -> Result<Self> {
        let d = alg.dim();
        if v.len() != d * d {
            return Err(Error::ShapeError("tensor coordinate vector has the wrong length".into()));
        }
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| ((k / d, k % d), c.clone()))
            .collect();
        Ok(Tensor2 { alg, terms })
    }

    /// Two-sided inverse inside the subalgebra `V⊗V ⊆ A⊗A`, where `V` is
    /// spanned by `basis`; found by solving `self · X = 1⊗1` exactly.
    pub fn inverse_on(&self, basis: &[Vector]) -> Option<Self> {
        let d = self.alg.dim();
        let m = basis.len();
        let pairs: Vec<Tensor2> = basis
            .iter()
            .flat_map(|x| basis.iter().map(move |y| (x, y)))
            .map(|(x, y)| Tensor2::pure(self.alg.clone(), x, y))
            .collect();
        let mut mat = Matrix::zeros(d * d, m * m);
        for (c, p) in pairs.iter().enumerate() {
            let prod = self.mul(p).ok()?;
            for ((i, j), v) in prod.terms {
                mat.set(i * d + j, c, v);
            }
        }
        let one = Tensor2::one(self.alg.clone());
        let x = mat.solve(&one.to_vector())?;
        let mut inv = Tensor2::zero(self.alg.clone());
        for (p, c) in pairs.iter().zip(&x) {
            if !c.is_zero() {
                inv = inv.add(&p.scale(c)).ok()?;
            }
        }
        let check = inv.mul(self).ok()?;
        (check == one && self.mul(&inv).ok()? == one).then_some(inv)
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.alg.dim();
        let basis: Vec<Vector> = (0..d).map(|i| crate::linalg::unit_vec(d, i)).collect();
        self.inverse_on(&basis)
    }
}

impl Tensor3 {
    pub fn zero(alg: AlgebraRef) -> Self {
        Tensor3 {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(alg: AlgebraRef, terms: impl IntoIterator<Item = (Key3, RatQ)>) -> Result<Self> {
        let d = alg.dim();
        let mut acc = HashMap::new();
        for ((i, j, k), c) in terms {
            if i >= d || j >= d || k >= d {
                return Err(Error::ShapeError("Tensor3 index out of range".into()));
            }
            accumulate(&mut acc, (i, j, k), c);
        }
        Ok(Tensor3 {
            alg,
            terms: collect(acc),
        })
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Key3, RatQ> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: HashMap<Key3, RatQ> = self.terms.clone().into_iter().collect();
        for (k, c) in &other.terms {
            accumulate(&mut acc, *k, c.clone());
        }
        Ok(Tensor3 {
            alg: self.alg.clone(),
            terms: collect(acc),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&RatQ::int(-1)))
    }

    pub fn scale(&self, c: &RatQ) -> Self {
        if c.is_zero() {
            return Self::zero(self.alg.clone());
        }
        Tensor3 {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul_ref(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let alg = &self.alg;
        let mut acc = HashMap::new();
        for ((i, j, k), c) in &self.terms {
            for ((a, b, e), d) in &other.terms {
                let l1 = alg.mul_basis(*i, *a);
                if l1.is_empty() {
                    continue;
                }
                let l2 = alg.mul_basis(*j, *b);
                if l2.is_empty() {
                    continue;
                }
                let l3 = alg.mul_basis(*k, *e);
                if l3.is_empty() {
                    continue;
                }
                let cd = c.mul_ref(d);
                for (x, cx) in l1 {
                    for (y, cy) in l2 {
                        let cxy = cd.mul_ref(&cx.mul_ref(cy));
                        for (z, cz) in l3 {
                            accumulate(&mut acc, (*x, *y, *z), cxy.mul_ref(cz));
                        }
                    }
                }
            }
        }
        Ok(Tensor3 {
            alg: self.alg.clone(),
            terms: collect(acc),
        })
    }

    /// `self · R_{legs}` (`right`) or `R_{legs} · self`, without materializing
    /// the unit on the remaining leg.
    pub fn mul_legs(&self, r: &Tensor2, legs: (usize, usize), right: bool) -> Result<Self> {
        if !same_algebra(&self.alg, &r.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let alg = &self.alg;
        let mut acc = HashMap::new();
        for (key, c) in &self.terms {
            let own = [key.0, key.1, key.2];
            for ((a, b), d) in &r.terms {
                let mut other = [None; 3];
                other[legs.0] = Some(*a);
                other[legs.1] = Some(*b);
                let mut lists: [Vec<(usize, RatQ)>; 3] = Default::default();
                let mut empty = false;
                for leg in 0..3 {
                    lists[leg] = match other[leg] {
                        None => vec![(own[leg], RatQ::one())],
                        Some(o) if right => alg.mul_basis(own[leg], o).to_vec(),
                        Some(o) => alg.mul_basis(o, own[leg]).to_vec(),
                    };
                    if lists[leg].is_empty() {
                        empty = true;
                        break;
                    }
                }
                if empty {
                    continue;
                }
                let cd = c.mul_ref(d);
                expand(&mut acc, &lists, &cd);
            }
        }
        Ok(Tensor3 {
            alg: self.alg.clone(),
            terms: collect(acc),
        })
    }
}

fn expand(acc: &mut HashMap<Key3, RatQ>, lists: &[Vec<(usize, RatQ)>; 3], c: &RatQ) {
    for (x, cx) in &lists[0] {
        let c1 = if cx.is_one() { c.clone() } else { c.mul_ref(cx) };
        for (y, cy) in &lists[1] {
            let c2 = if cy.is_one() { c1.clone() } else { c1.mul_ref(cy) };
            for (z, cz) in &lists[2] {
                let c3 = if cz.is_one() { c2.clone() } else { c2.mul_ref(cz) };
                accumulate(acc, (*x, *y, *z), c3);
            }
        }
    }
}

/// `X_{lx} · Y_{ly}` in `A^{⊗3}` for two-leg tensors placed on distinct leg
/// pairs, e.g. `pair_product(r, (0,1), r, (0,2)) = r₁₂ r₁₃`.
pub fn pair_product(x: &Tensor2, lx: (usize, usize), y: &Tensor2, ly: (usize, usize)) -> Result<Tensor3> {
    if !same_algebra(&x.alg, &y.alg) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = &x.alg;
    let mut acc = HashMap::new();
    for ((a, b), c) in &x.terms {
        let mut sx = [None; 3];
        sx[lx.0] = Some(*a);
        sx[lx.1] = Some(*b);
        for ((e, f), d) in &y.terms {
            let mut sy = [None; 3];
            sy[ly.0] = Some(*e);
            sy[ly.1] = Some(*f);
            let lists = [
                leg_factor(alg, sx[0], sy[0]),
                leg_factor(alg, sx[1], sy[1]),
                leg_factor(alg, sx[2], sy[2]),
            ];
            if lists.iter().any(|l| l.is_empty()) {
                continue;
            }
            expand(&mut acc, &lists, &c.mul_ref(d));
        }
    }
    Ok(Tensor3 {
        alg: x.alg.clone(),
        terms: collect(acc),
    })
}

fn embed(a: &Tensor2, legs: (usize, usize)) -> Tensor3 {
    let unit = sparse_unit(&a.alg);
    let mut terms = BTreeMap::new();
    for ((i, j), c) in &a.terms {
        for (u, cu) in &unit {
            let mut key = [*u; 3];
            key[legs.0] = *i;
            key[legs.1] = *j;
            terms.insert((key[0], key[1], key[2]), c.mul_ref(cu));
        }
    }
    Tensor3 {
        alg: a.alg.clone(),
        terms,
    }
}

pub fn embed12(a: &Tensor2) -> Tensor3 {
    embed(a, (0, 1))
}

pub fn embed13(a: &Tensor2) -> Tensor3 {
    embed(a, (0, 2))
}

pub fn embed23(a: &Tensor2) -> Tensor3 {
    embed(a, (1, 2))
}

pub fn t2_mul(a: &Tensor2, b: &Tensor2) -> Result<Tensor2> {
    a.mul(b)
}

pub fn t3_mul(a: &Tensor3, b: &Tensor3) -> Result<Tensor3> {
    a.mul(b)
}

pub fn flip_legs(a: &Tensor2) -> Tensor2 {
    a.flip()
}

pub fn t2_scale(a: &Tensor2, c: &RatQ) -> Tensor2 {
    a.scale(c)
}

pub fn t2_add(a: &Tensor2, b: &Tensor2) -> Result<Tensor2> {
    a.add(b)
}

pub fn t2_sub(a: &Tensor2, b: &Tensor2) -> Result<Tensor2> {
    a.sub(b)
}

pub fn t3_sub(a: &Tensor3, b: &Tensor3) -> Result<Tensor3> {
    a.sub(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diagonal_algebra, mat_algebra};
    use proptest::prelude::*;

    fn mat(n: usize) -> AlgebraRef {
        Arc::new(mat_algebra(n).unwrap())
    }

    fn flip_element(alg: &AlgebraRef, n: usize) -> Tensor2 {
        let mut t = Tensor2::zero(alg.clone());
        for i in 0..n {
            for j in 0..n {
                t.add_term((i * n + j, j * n + i), RatQ::one()).unwrap();
            }
        }
        t
    }

    #[test]
    fn unit_is_neutral() {
        let a = mat(2);
        let mut r = Tensor2::zero(a.clone());
        r.add_term((1, 2), RatQ::q()).unwrap();
        r.add_term((0, 3), RatQ::omega()).unwrap();
        let one = Tensor2::one(a);
        assert_eq!(one.mul(&r).unwrap(), r);
        assert_eq!(r.mul(&one).unwrap(), r);
    }

    #[test]
    fn flip_squares_to_one() {
        let a = mat(2);
        let s = flip_element(&a, 2);
        assert_eq!(s.mul(&s).unwrap(), Tensor2::one(a));
    }

    #[test]
    fn product_with_vanishing_leg() {
        let a = mat(2);
        let x = Tensor2::from_terms(a.clone(), [((0, 0), RatQ::one())]).unwrap();
        let y = Tensor2::from_terms(a, [((1, 3), RatQ::one())]).unwrap();
        assert!(x.mul(&y).unwrap().is_zero());
    }

    #[test]
    fn embeddings() {
        let a = mat(2);
        let x = Tensor2::from_terms(a.clone(), [((1, 2), RatQ::one())]).unwrap();
        let e = embed13(&x);
        assert_eq!(e.len(), 2);
        assert!(e.terms().contains_key(&(1, 0, 2)) && e.terms().contains_key(&(1, 3, 2)));
        let one3 = embed12(&Tensor2::one(a.clone()));
        assert_eq!(one3.len(), 8);
        assert_eq!(embed23(&Tensor2::one(a.clone())), one3);
    }

    #[test]
    fn flip_of_permutation_and_involution() {
        let a = mat(3);
        let s = flip_element(&a, 3);
        assert_eq!(s.flip(), s);
        let x = Tensor2::from_terms(a, [((1, 5), RatQ::q()), ((2, 2), RatQ::int(3))]).unwrap();
        assert_eq!(x.flip().flip(), x);
    }

    #[test]
    fn algebra_mismatch() {
        let x = Tensor2::one(mat(2));
        let y = Tensor2::one(Arc::new(diagonal_algebra(4).unwrap()));
        assert!(matches!(x.mul(&y), Err(Error::AlgebraMismatch)));
        assert!(matches!(x.add(&y), Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn disjoint_union_and_cancellation() {
        let a = mat(2);
        let x = Tensor2::from_terms(a.clone(), [((0, 1), RatQ::one())]).unwrap();
        let y = Tensor2::from_terms(a, [((2, 3), RatQ::q())]).unwrap();
        assert_eq!(x.add(&y).unwrap().len(), 2);
        assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn inverse_of_diagonal_twist() {
        let d = Arc::new(diagonal_algebra(2).unwrap());
        let f = Tensor2::from_terms(
            d.clone(),
            [
                ((0, 0), RatQ::one()),
                ((0, 1), RatQ::int(2)),
                ((1, 0), RatQ::frac(1, 2)),
                ((1, 1), RatQ::q()),
            ],
        )
        .unwrap();
        let inv = f.inverse().unwrap();
        assert_eq!(inv.coeff(0, 1), RatQ::frac(1, 2));
        assert_eq!(inv.coeff(1, 1), RatQ::q_pow(-1));
        let singular = Tensor2::from_terms(d, [((0, 0), RatQ::one())]).unwrap();
        assert!(singular.inverse().is_none());
    }

    fn small_tensor(alg: AlgebraRef) -> impl Strategy<Value = Tensor2> {
        let d = alg.dim();
        prop::collection::vec(((0..d, 0..d), -3i64..4, -2i64..3), 0..6).prop_map(move |ts| {
            Tensor2::from_terms(
                alg.clone(),
                ts.into_iter().map(|(k, c, e)| (k, RatQ::int(c).mul_ref(&RatQ::q_pow(e)))),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn embedding_is_multiplicative(x in small_tensor(mat(2)), y in small_tensor(mat(2))) {
            let xy = x.mul(&y).unwrap();
            prop_assert_eq!(embed12(&x).mul(&embed12(&y)).unwrap(), embed12(&xy));
            prop_assert_eq!(embed13(&x).mul(&embed13(&y)).unwrap(), embed13(&xy));
            prop_assert_eq!(embed23(&x).mul(&embed23(&y)).unwrap(), embed23(&xy));
        }

        #[test]
        fn flip_is_multiplicative(x in small_tensor(mat(2)), y in small_tensor(mat(2))) {
            prop_assert_eq!(x.mul(&y).unwrap().flip(), x.flip().mul(&y.flip()).unwrap());
        }

        #[test]
        fn staged_products_match_embeddings(x in small_tensor(mat(2)), y in small_tensor(mat(2))) {
            let direct = embed12(&x).mul(&embed13(&y)).unwrap();
            prop_assert_eq!(pair_product(&x, (0, 1), &y, (0, 2)).unwrap(), direct.clone());
            let z = y.flip();
            let three = direct.mul(&embed23(&z)).unwrap();
            prop_assert_eq!(direct.mul_legs(&z, (1, 2), true).unwrap(), three);
            let left = embed23(&z).mul(&direct).unwrap();
            prop_assert_eq!(direct.mul_legs(&z, (1, 2), false).unwrap(), left);
        }
    }
}
