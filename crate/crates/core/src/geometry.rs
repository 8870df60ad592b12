//! Points and subspaces of `PG(k-1, q^m)` and `F_q`-subspaces of `F_{q^m}^k`.
//!
//! An `F_q`-subspace is kept only in flattened form, as a basis of
//! `F_q^{mk}` in reduced row echelon form; that basis is the canonical
//! representative, so equality of subspaces is equality of matrices.
//! `F_{q^m}`-subspaces keep an `F_{q^m}` basis and are flattened on demand.
//!
//! Points are normalized so that the first nonzero coordinate is 1, and
//! they are ordered lexicographically by coordinate codes. The index of a
//! point in that order is computed in closed form, see
//! [`ProjectiveSpace::index_of`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Tower};
use crate::linalg::{self, Matrix};

/// Largest number of points of a projective space we are willing to enumerate.
pub const MAX_POINTS: u64 = 1 << 32;

/// A point of `PG(k-1, q^m)` with its first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectivePoint(Vec<Elem>);

impl ProjectivePoint {
    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Elem> {
        self.0
    }
}

/// The projective space `PG(k-1, q^m)` over a given tower.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace<'t> {
    tower: &'t Tower,
    k: usize,
    /// `offsets[i]` = number of points whose leading coordinate sits after `i`.
    offsets: Vec<u64>,
    num_points: u64,
}

impl<'t> ProjectiveSpace<'t> {
    pub fn new(tower: &'t Tower, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange("k must be at least 1".into()));
        }
        let qm = tower.qm() as u64;
        let mut offsets = vec![0u64; k];
        let mut acc = 0u64;
        let mut block = 1u64;
        for i in (0..k).rev() {
            offsets[i] = acc;
            acc = acc
                .checked_add(block)
                .filter(|&a| a <= MAX_POINTS)
                .ok_or_else(|| Error::Infeasible(format!("PG({}, {qm}) has too many points", k - 1)))?;
            block = block.saturating_mul(qm);
        }
        Ok(ProjectiveSpace {
            tower,
            k,
            offsets,
            num_points: acc,
        })
    }

    pub fn tower(&self) -> &'t Tower {
        self.tower
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `(q^{mk} - 1) / (q^m - 1)`.
    pub fn num_points(&self) -> usize {
        self.num_points as usize
    }

    /// Scales `v` in place so its first nonzero entry is 1. Returns `false` for the zero vector.
    #[inline]
    pub fn normalize_in_place(&self, v: &mut [Elem]) -> bool {
        let f = self.tower.fqm();
        let Some(lead) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let c = v[lead];
        if c != Elem::ONE {
            let inv = f.inv(c).expect("nonzero");
            v[lead] = Elem::ONE;
            for x in v[lead + 1..].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        true
    }

    pub fn normalize(&self, v: &[Elem]) -> Result<ProjectivePoint> {
        self.check_len(v.len())?;
        for &c in v {
            self.tower.fqm().elem(c.0)?;
        }
        let mut w = v.to_vec();
        if !self.normalize_in_place(&mut w) {
            return Err(Error::ZeroVector);
        }
        Ok(ProjectivePoint(w))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.k {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.k,
                right: len,
            })
        }
    }

    /// Position of a normalized vector in the sorted point list.
    ///
    /// With the leading 1 at position `i`, the points ordered before it are
    /// those with the leading 1 further right plus those sharing position `i`
    /// whose trailing coordinates read as a smaller base-`q^m` number.
    #[inline]
    pub fn index_of(&self, normalized: &[Elem]) -> usize {
        let lead = normalized
            .iter()
            .position(|c| !c.is_zero())
            .expect("points are nonzero");
        debug_assert_eq!(normalized[lead], Elem::ONE);
        let qm = self.tower.qm() as u64;
        let tail = normalized[lead + 1..].iter().fold(0u64, |acc, c| acc * qm + c.0 as u64);
        (self.offsets[lead] + tail) as usize
    }

    pub fn point(&self, index: usize) -> ProjectivePoint {
        let idx = index as u64;
        assert!(idx < self.num_points, "point index out of range");
        let qm = self.tower.qm() as u64;
        let lead = (0..self.k).find(|&i| idx >= self.offsets[i]).expect("offsets[k-1] = 0");
        let mut tail = idx - self.offsets[lead];
        let mut coords = vec![Elem::ZERO; self.k];
        coords[lead] = Elem::ONE;
        for c in coords[lead + 1..].iter_mut().rev() {
            *c = Elem((tail % qm) as u32);
            tail /= qm;
        }
        ProjectivePoint(coords)
    }

    /// All points in sorted order.
    pub fn points(&self) -> impl Iterator<Item = ProjectivePoint> + '_ {
        (0..self.num_points()).map(|i| self.point(i))
    }

    /// The `q^m + 1` points of the line `PQ`.
    pub fn line_through(&self, p: &ProjectivePoint, q: &ProjectivePoint) -> Result<Vec<ProjectivePoint>> {
        self.check_len(p.0.len())?;
        self.check_len(q.0.len())?;
        if p == q {
            return Err(Error::SamePoint);
        }
        let mut idx = Vec::new();
        self.line_indices(&p.0, &q.0, &mut idx);
        idx.sort_unstable();
        Ok(idx.into_iter().map(|i| self.point(i)).collect())
    }

    /// Appends the indices of the points on the line through two distinct
    /// normalized points.
    pub(crate) fn line_indices(&self, p: &[Elem], q: &[Elem], out: &mut Vec<usize>) {
        let f = self.tower.fqm();
        let lead = |v: &[Elem]| v.iter().position(|c| !c.is_zero()).expect("nonzero");
        // Rewrite the line as {a + t b} ∪ {b} with lead(a) < lead(b): then
        // every a + t b already has its leading 1 in place.
        let (lp, lq) = (lead(p), lead(q));
        let (a, b): (&[Elem], Vec<Elem>) = if lp < lq {
            (p, q.to_vec())
        } else if lq < lp {
            (q, p.to_vec())
        } else {
            let mut d: Vec<Elem> = p.iter().zip(q).map(|(&x, &y)| f.sub(x, y)).collect();
            let ok = self.normalize_in_place(&mut d);
            debug_assert!(ok, "distinct points");
            (p, d)
        };
        out.push(self.index_of(&b));
        let mut w = vec![Elem::ZERO; self.k];
        for t in f.elements() {
            for ((wi, &ai), &bi) in w.iter_mut().zip(a).zip(&b) {
                *wi = f.add(ai, f.mul(t, bi));
            }
            out.push(self.index_of(&w));
        }
    }
}

/// An `F_q`-subspace of `F_{q^m}^k`, stored as an RREF basis of `F_q^{mk}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqSubspace {
    k: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl FqSubspace {
    pub fn zero(k: usize) -> Self {
        FqSubspace {
            k,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The `F_q`-span of vectors of `F_{q^m}^k`.
    pub fn from_vectors(tower: &Tower, k: usize, vs: &[Vec<Elem>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vs.len());
        for v in vs {
            if v.len() != k {
                return Err(Error::AmbientMismatch {
                    left: k,
                    right: v.len(),
                });
            }
            for &c in v {
                tower.fqm().elem(c.0)?;
            }
            rows.push(tower.to_fq_coords(v));
        }
        Ok(Self::from_flat_rows_unchecked(tower, k, rows))
    }

    /// The span of rows of `F_q^{mk}`.
    pub fn from_flat_rows(tower: &Tower, k: usize, rows: Matrix) -> Result<Self> {
        for r in &rows {
            if r.len() != k * tower.m() {
                return Err(Error::AmbientMismatch {
                    left: k * tower.m(),
                    right: r.len(),
                });
            }
            for &c in r {
                tower.fq().elem(c.0)?;
            }
        }
        Ok(Self::from_flat_rows_unchecked(tower, k, rows))
    }

    fn from_flat_rows_unchecked(tower: &Tower, k: usize, mut rows: Matrix) -> Self {
        let pivots = linalg::rref(tower.fq(), &mut rows);
        FqSubspace { k, basis: rows, pivots }
    }

    pub fn ambient_k(&self) -> usize {
        self.k
    }

    /// `dim_{F_q}`, i.e. the rank of the linear set.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical basis: rows of `F_q^{mk}` in RREF.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    /// Basis rows read back as vectors of `F_{q^m}^k`.
    pub fn generators(&self, tower: &Tower) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        self.basis
            .iter()
            .map(|r| {
                tower.fill_from_fq_coords(r, &mut out);
                out.clone()
            })
            .collect()
    }

    fn check_ambient(&self, other: &FqSubspace) -> Result<()> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.k,
                right: other.k,
            })
        }
    }

    pub fn sum(&self, tower: &Tower, other: &FqSubspace) -> Result<FqSubspace> {
        self.check_ambient(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_flat_rows_unchecked(tower, self.k, rows))
    }

    /// Membership of a flattened vector.
    pub fn contains_flat(&self, tower: &Tower, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        linalg::reduce(tower.fq(), &self.basis, &self.pivots, &mut w);
        w.iter().all(|c| c.is_zero())
    }

    pub fn contains(&self, tower: &Tower, v: &[Elem]) -> bool {
        self.contains_flat(tower, &tower.to_fq_coords(v))
    }

    /// `dim_{F_{q^m}}` of the `F_{q^m}`-span of the subspace.
    pub fn fqm_rank(&self, tower: &Tower) -> usize {
        linalg::rank(tower.fqm(), &self.generators(tower))
    }

    /// Calls `visit` with one flattened representative of every 1-dimensional
    /// `F_q`-subspace (the first nonzero coefficient over the basis is 1).
    pub fn for_each_projective_vector(&self, tower: &Tower, mut visit: impl FnMut(&[Elem])) {
        let fq = tower.fq();
        let q = tower.q();
        let n = self.dim();
        let len = self.k * tower.m();
        let mut coeffs = vec![0u32; n];
        let mut v = vec![Elem::ZERO; len];
        for lead in 0..n {
            coeffs.iter_mut().for_each(|c| *c = 0);
            coeffs[lead] = 1;
            loop {
                v.iter_mut().for_each(|x| *x = Elem::ZERO);
                for (c, row) in coeffs.iter().zip(&self.basis) {
                    if *c == 0 {
                        continue;
                    }
                    for (x, &b) in v.iter_mut().zip(row) {
                        *x = fq.add(*x, fq.mul(Elem(*c), b));
                    }
                }
                visit(&v);
                // advance the free coefficients after `lead`
                let mut pos = n;
                let advanced = loop {
                    if pos == lead + 1 {
                        break false;
                    }
                    pos -= 1;
                    coeffs[pos] += 1;
                    if coeffs[pos] < q {
                        break true;
                    }
                    coeffs[pos] = 0;
                };
                if !advanced {
                    break;
                }
            }
        }
    }

    /// Image under `u ↦ u M` for an invertible `k × k` matrix `M` over `F_{q^m}`.
    pub fn image(&self, tower: &Tower, m: &[Vec<Elem>]) -> Result<FqSubspace> {
        if m.len() != self.k || !linalg::is_invertible(tower.fqm(), m) {
            return Err(Error::SingularMatrix);
        }
        let gens: Vec<_> = self
            .generators(tower)
            .iter()
            .map(|g| linalg::vec_mat(tower.fqm(), g, m))
            .collect();
        Self::from_vectors(tower, self.k, &gens)
    }
}

/// `dim_{F_q}(A ∩ B) = dim A + dim B - dim(A + B)`.
pub fn intersect_dim(tower: &Tower, a: &FqSubspace, b: &FqSubspace) -> Result<usize> {
    Ok(a.dim() + b.dim() - a.sum(tower, b)?.dim())
}

/// An `F_{q^m}`-subspace of `F_{q^m}^k`, i.e. a projective subspace of `PG(k-1, q^m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSubspace {
    k: usize,
    basis: Matrix,
}

impl ProjectiveSubspace {
    pub fn new(tower: &Tower, k: usize, basis: Matrix) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.len() != k) {
            return Err(Error::AmbientMismatch {
                left: k,
                right: v.len(),
            });
        }
        if linalg::rank(tower.fqm(), &basis) != basis.len() {
            return Err(Error::DependentRows);
        }
        Ok(ProjectiveSubspace { k, basis })
    }

    pub fn point(p: &ProjectivePoint) -> Self {
        ProjectiveSubspace {
            k: p.0.len(),
            basis: vec![p.0.clone()],
        }
    }

    pub fn line(tower: &Tower, p: &ProjectivePoint, q: &ProjectivePoint) -> Result<Self> {
        if p == q {
            return Err(Error::SamePoint);
        }
        Self::new(tower, p.0.len(), vec![p.0.clone(), q.0.clone()])
    }

    /// `x^⊥ = { y : Σ x_i y_i = 0 }`.
    pub fn hyperplane(tower: &Tower, x: &[Elem]) -> Result<Self> {
        if x.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let basis = linalg::null_space(tower.fqm(), &[x.to_vec()], x.len());
        Ok(ProjectiveSubspace { k: x.len(), basis })
    }

    pub fn whole(k: usize) -> Self {
        let basis = (0..k)
            .map(|i| {
                let mut e = vec![Elem::ZERO; k];
                e[i] = Elem::ONE;
                e
            })
            .collect();
        ProjectiveSubspace { k, basis }
    }

    pub fn ambient_k(&self) -> usize {
        self.k
    }

    pub fn fqm_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    /// The underlying `F_q`-subspace, of dimension `m · fqm_dim`.
    pub fn as_fq(&self, tower: &Tower) -> FqSubspace {
        let omegas = tower.fq_basis();
        let f = tower.fqm();
        let rows = self
            .basis
            .iter()
            .flat_map(|w| {
                omegas.iter().map(move |&o| {
                    let scaled: Vec<Elem> = w.iter().map(|&c| f.mul(o, c)).collect();
                    tower.to_fq_coords(&scaled)
                })
            })
            .collect();
        FqSubspace::from_flat_rows_unchecked(tower, self.k, rows)
    }
}

/// Uniformly random `dim`-dimensional `F_q`-subspace of `F_{q^m}^k`, drawn
/// from the given generator.
///
/// Uniform vectors of `F_q^{mk}` are drawn and kept whenever they raise the
/// rank. The result is uniform over all subspaces of that dimension because
/// the procedure commutes with `GL(mk, q)`.
pub fn random_subspace_with<R: Rng + ?Sized>(tower: &Tower, dim: usize, k: usize, rng: &mut R) -> Result<FqSubspace> {
    let len = k * tower.m();
    if dim > len {
        return Err(Error::OutOfRange(format!("dim {dim} exceeds mk = {len}")));
    }
    let fq = tower.fq();
    let mut rows: Matrix = Vec::with_capacity(dim);
    let mut pivots = Vec::new();
    while rows.len() < dim {
        let mut v: Vec<Elem> = (0..len).map(|_| Elem(rng.gen_range(0..tower.q()))).collect();
        let original = v.clone();
        linalg::reduce(fq, &rows, &pivots, &mut v);
        if v.iter().any(|c| !c.is_zero()) {
            rows.push(original);
            pivots = linalg::rref(fq, &mut rows);
        }
    }
    Ok(FqSubspace { k, basis: rows, pivots })
}

/// [`random_subspace_with`] on a ChaCha8 generator seeded by `seed_from_u64(seed)`.
pub fn random_subspace(tower: &Tower, dim: usize, k: usize, seed: u64) -> Result<FqSubspace> {
    random_subspace_with(tower, dim, k, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Uniformly random element of `GL(k, q^m)`.
pub fn random_invertible<R: Rng + ?Sized>(tower: &Tower, k: usize, rng: &mut R) -> Matrix {
    loop {
        let m: Matrix = (0..k)
            .map(|_| (0..k).map(|_| Elem(rng.gen_range(0..tower.qm()))).collect())
            .collect();
        if linalg::is_invertible(tower.fqm(), &m) {
            return m;
        }
    }
}

/// Uniformly random nonzero vector of `F_{q^m}^k`.
pub fn random_nonzero_vector<R: Rng + ?Sized>(tower: &Tower, k: usize, rng: &mut R) -> Vec<Elem> {
    loop {
        let v: Vec<Elem> = (0..k).map(|_| Elem(rng.gen_range(0..tower.qm()))).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn tower2() -> Tower {
        Tower::new(2, 1, 4).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let t = tower2();
        let s = ProjectiveSpace::new(&t, 3).unwrap();
        let f = t.fqm();
        let (a, b) = (Elem(6), Elem(11));
        let p = s.normalize(&[Elem::ZERO, a, b]).unwrap();
        assert_eq!(p.coords(), &[Elem::ZERO, Elem::ONE, f.mul(f.inv(a).unwrap(), b)]);
        let p = s.normalize(&[Elem::ZERO, Elem::ZERO, Elem(9)]).unwrap();
        assert_eq!(p.coords(), &[Elem::ZERO, Elem::ZERO, Elem::ONE]);
        assert_eq!(s.normalize(&[Elem::ZERO; 3]), Err(Error::ZeroVector));
        assert!(matches!(
            s.normalize(&[Elem::ONE; 2]),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn normalize_is_scale_invariant() {
        let t = Tower::new(3, 1, 4).unwrap();
        let s = ProjectiveSpace::new(&t, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let v = random_nonzero_vector(&t, 3, &mut rng);
            let alpha = Elem(rng.gen_range(1..t.qm()));
            let w: Vec<Elem> = v.iter().map(|&c| t.fqm().mul(alpha, c)).collect();
            assert_eq!(s.normalize(&v).unwrap(), s.normalize(&w).unwrap());
        }
    }

    #[test]
    fn point_counts_and_index_round_trip() {
        let t = tower2();
        for (k, expected) in [(1, 1), (2, 17), (3, 273)] {
            let s = ProjectiveSpace::new(&t, k).unwrap();
            assert_eq!(s.num_points(), expected);
            let pts: Vec<_> = s.points().collect();
            assert!(pts.windows(2).all(|w| w[0] < w[1]), "sorted and distinct");
            for (i, p) in pts.iter().enumerate() {
                assert_eq!(s.index_of(p.coords()), i);
            }
        }
        // every normalized vector appears exactly once
        let s = ProjectiveSpace::new(&t, 3).unwrap();
        let mut seen = HashSet::new();
        for code in 1..16u32 * 16 * 16 {
            let v = [Elem(code >> 8), Elem((code >> 4) & 15), Elem(code & 15)];
            seen.insert(s.normalize(&v).unwrap());
        }
        assert_eq!(seen.len(), 273);
    }

    #[test]
    fn lines() {
        let t = tower2();
        let s = ProjectiveSpace::new(&t, 3).unwrap();
        let p = s.normalize(&[Elem::ONE, Elem::ZERO, Elem::ZERO]).unwrap();
        let q = s.normalize(&[Elem::ZERO, Elem::ONE, Elem::ZERO]).unwrap();
        let line = s.line_through(&p, &q).unwrap();
        assert_eq!(line.len(), 17);
        assert!(line.iter().all(|x| x.coords()[2].is_zero()));
        assert!(line.contains(&p) && line.contains(&q));
        assert_eq!(s.line_through(&p, &p), Err(Error::SamePoint));

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let p = s.point(rng.gen_range(0..273));
            let q = s.point(rng.gen_range(0..273));
            if p == q {
                continue;
            }
            let l1 = s.line_through(&p, &q).unwrap();
            assert_eq!(l1.len(), 17);
            assert_eq!(l1, s.line_through(&q, &p).unwrap());
            let a = &l1[rng.gen_range(0..17)];
            let b = &l1[rng.gen_range(0..17)];
            if a != b {
                assert_eq!(l1, s.line_through(a, b).unwrap());
            }
        }
    }

    #[test]
    fn subspace_from_vectors() {
        let t = tower2();
        let f = t.fqm();
        let gens: Vec<Vec<Elem>> = t
            .fq_basis()
            .into_iter()
            .map(|x| vec![x, t.frobenius(x, 1), t.frobenius(x, 2)])
            .collect();
        let u = FqSubspace::from_vectors(&t, 3, &gens).unwrap();
        assert_eq!(u.dim(), 4);
        let mut dup = gens.clone();
        dup.push(gens[0].clone());
        assert_eq!(FqSubspace::from_vectors(&t, 3, &dup).unwrap(), u);

        let lambda = Elem(2);
        let e1 = vec![Elem::ONE, Elem::ZERO, Elem::ZERO];
        let le1: Vec<Elem> = e1.iter().map(|&c| f.mul(lambda, c)).collect();
        assert_eq!(FqSubspace::from_vectors(&t, 3, &[e1, le1]).unwrap().dim(), 2);
        assert_eq!(FqSubspace::from_vectors(&t, 3, &[]).unwrap().dim(), 0);
    }

    /// Exhaustive oracle: |A ∩ B| by enumerating A and testing membership in B.
    fn intersect_dim_by_count(t: &Tower, a: &FqSubspace, b: &FqSubspace) -> usize {
        let q = t.q() as usize;
        let n = a.dim();
        let mut count = 0usize;
        for idx in 0..q.pow(n as u32) {
            let mut v = vec![Elem::ZERO; a.ambient_k() * t.m()];
            let mut c = idx;
            for row in a.basis() {
                let coef = Elem((c % q) as u32);
                c /= q;
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = t.fq().add(*x, t.fq().mul(coef, r));
                }
            }
            if b.contains_flat(t, &v) {
                count += 1;
            }
        }
        let mut d = 0;
        while q.pow(d) < count {
            d += 1;
        }
        assert_eq!(q.pow(d), count);
        d as usize
    }

    #[test]
    fn intersect_dim_matches_counting_oracle() {
        let t = tower2();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let da = rng.gen_range(0..=8);
            let db = rng.gen_range(0..=12);
            let a = random_subspace_with(&t, da, 3, &mut rng).unwrap();
            let b = random_subspace_with(&t, db, 3, &mut rng).unwrap();
            assert_eq!(intersect_dim(&t, &a, &b).unwrap(), intersect_dim_by_count(&t, &a, &b));
        }
    }

    #[test]
    fn intersect_dim_edge_cases() {
        let t = tower2();
        let a = random_subspace(&t, 5, 3, 1).unwrap();
        assert_eq!(intersect_dim(&t, &a, &a).unwrap(), 5);
        let sum = a.sum(&t, &random_subspace(&t, 3, 3, 2).unwrap()).unwrap();
        assert_eq!(intersect_dim(&t, &a, &sum).unwrap(), a.dim());
        let x = ProjectiveSubspace::new(&t, 3, vec![vec![Elem::ONE, Elem::ZERO, Elem::ZERO]]).unwrap();
        let yz = ProjectiveSubspace::new(
            &t,
            3,
            vec![
                vec![Elem::ZERO, Elem::ONE, Elem::ZERO],
                vec![Elem::ZERO, Elem::ZERO, Elem::ONE],
            ],
        )
        .unwrap();
        assert_eq!(intersect_dim(&t, &x.as_fq(&t), &yz.as_fq(&t)).unwrap(), 0);
        assert!(matches!(
            intersect_dim(&t, &a, &FqSubspace::zero(2)),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn fqm_subspaces_flatten_to_m_times_dim() {
        let t = tower2();
        let s = ProjectiveSpace::new(&t, 3).unwrap();
        let line = ProjectiveSubspace::line(&t, &s.point(3), &s.point(100)).unwrap();
        assert_eq!(line.as_fq(&t).dim(), 8);
        let h = ProjectiveSubspace::hyperplane(&t, &[Elem(3), Elem(7), Elem(1)]).unwrap();
        assert_eq!(h.as_fq(&t).dim(), 8);
        assert_eq!(ProjectiveSubspace::whole(3).as_fq(&t).dim(), 12);
        assert_eq!(
            ProjectiveSubspace::new(
                &t,
                3,
                vec![vec![Elem(1), Elem(2), Elem(0)], vec![Elem(2), Elem(4), Elem(0)]]
            ),
            Err(Error::DependentRows)
        );
    }

    #[test]
    fn random_subspace_is_deterministic() {
        let t = tower2();
        assert_eq!(random_subspace(&t, 0, 3, 4).unwrap().dim(), 0);
        assert_eq!(
            random_subspace(&t, 6, 3, 4).unwrap(),
            random_subspace(&t, 6, 3, 4).unwrap()
        );
        assert!(random_subspace(&t, 13, 3, 4).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..1000 {
            let u = random_subspace_with(&t, 4, 3, &mut rng).unwrap();
            assert_eq!(u.dim(), 4);
        }
    }

    #[test]
    fn projective_vectors_cover_each_line_once() {
        let t = Tower::new(3, 1, 4).unwrap();
        let u = random_subspace(&t, 4, 2, 8).unwrap();
        let mut seen = HashSet::new();
        u.for_each_projective_vector(&t, |v| {
            assert!(u.contains_flat(&t, v));
            assert!(seen.insert(v.to_vec()));
        });
        assert_eq!(seen.len(), 40);
    }
}
