//! Linear sets `L_U`: points, weights, spectra, scatteredness and saturation.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{intersect_dim, FqSubspace, ProjectivePoint, ProjectiveSpace, ProjectiveSubspace};
use crate::gf::{Elem, Tower};
use crate::linalg;

/// `(q^n - 1) / (q - 1)`.
pub fn theta(q: u64, n: usize) -> u64 {
    (0..n).map(|i| q.pow(i as u32)).sum()
}

/// The linear set of an `F_q`-subspace together with the weight of every point.
#[derive(Clone, Debug)]
pub struct LinearSet {
    subspace: FqSubspace,
    q: u64,
    indices: Vec<usize>,
    points: Vec<ProjectivePoint>,
    weights: Vec<usize>,
    spectrum: Vec<usize>,
}

/// Outcome of the counting identities every linear set satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Identities {
    /// `|L_U| <= (q^n - 1)/(q - 1)`
    pub size_at_most_theta: bool,
    /// `|L_U| = N_1 + .. + N_n`
    pub size_is_spectrum_sum: bool,
    /// `sum_i N_i (q^i - 1)/(q - 1) = (q^n - 1)/(q - 1)`
    pub weighted_spectrum: bool,
    /// `|L_U| = 1 (mod q)`
    pub size_one_mod_q: bool,
    /// `w(P) + w(Q) <= n` for distinct points
    pub pair_weights: bool,
}

impl Identities {
    pub fn all(&self) -> bool {
        self.size_at_most_theta
            && self.size_is_spectrum_sum
            && self.weighted_spectrum
            && self.size_one_mod_q
            && self.pair_weights
    }
}

impl LinearSet {
    pub fn new(space: &ProjectiveSpace<'_>, u: &FqSubspace) -> Result<LinearSet> {
        let tower = space.tower();
        if u.ambient_k() != space.k() {
            return Err(Error::AmbientMismatch {
                left: space.k(),
                right: u.ambient_k(),
            });
        }
        if u.dim() == 0 {
            return Err(Error::ZeroSubspace);
        }
        let mut indices = Vec::new();
        let mut buf = Vec::with_capacity(space.k());
        u.for_each_projective_vector(tower, |flat| {
            tower.fill_from_fq_coords(flat, &mut buf);
            space.normalize_in_place(&mut buf);
            indices.push(space.index_of(&buf));
        });
        indices.sort_unstable();
        indices.dedup();
        let points: Vec<ProjectivePoint> = indices.iter().map(|&i| space.point(i)).collect();
        let weights = points
            .iter()
            .map(|p| point_weight(tower, u, p))
            .collect::<Result<Vec<_>>>()?;
        let mut spectrum = vec![0; u.dim()];
        for &w in &weights {
            spectrum[w - 1] += 1;
        }
        let ls = LinearSet {
            subspace: u.clone(),
            q: tower.q() as u64,
            indices,
            points,
            weights,
            spectrum,
        };
        let ids = ls.identities();
        if !ids.all() {
            return Err(Error::Invariant(format!("linear set identities failed: {ids:?}")));
        }
        Ok(ls)
    }

    pub fn subspace(&self) -> &FqSubspace {
        &self.subspace
    }

    pub fn rank(&self) -> usize {
        self.subspace.dim()
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Points in sorted order.
    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// Indices of the points in [`ProjectiveSpace`] order.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Weights aligned with [`LinearSet::points`].
    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// `N_1, .., N_n`.
    pub fn spectrum(&self) -> &[usize] {
        &self.spectrum
    }

    /// Weight of any point of the space; 0 outside `L_U`.
    pub fn weight_of(&self, p: &ProjectivePoint) -> usize {
        self.points.binary_search(p).map_or(0, |i| self.weights[i])
    }

    pub fn max_weight(&self) -> usize {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn identities(&self) -> Identities {
        let q = self.q;
        let n = self.rank();
        let size = self.size() as u64;
        let mut top = self.weights.clone();
        top.sort_unstable_by(|a, b| b.cmp(a));
        Identities {
            size_at_most_theta: size <= theta(q, n),
            size_is_spectrum_sum: size == self.spectrum.iter().sum::<usize>() as u64,
            weighted_spectrum: self
                .spectrum
                .iter()
                .enumerate()
                .map(|(i, &c)| c as u64 * theta(q, i + 1))
                .sum::<u64>()
                == theta(q, n),
            size_one_mod_q: size == 0 || size % q == 1 % q,
            pair_weights: top.len() < 2 || top[0] + top[1] <= n,
        }
    }

    /// Coverage of the space by `L_U` (`rho = 1`) or by its secant lines
    /// (`rho = 2`).
    pub fn saturation(&self, space: &ProjectiveSpace<'_>, rho: usize) -> Result<SaturationCertificate> {
        self.saturation_impl(space, rho, false)
    }

    /// As [`LinearSet::saturation`], scanning point pairs on the rayon pool.
    /// The result is identical to the sequential scan.
    pub fn saturation_par(&self, space: &ProjectiveSpace<'_>, rho: usize) -> Result<SaturationCertificate> {
        self.saturation_impl(space, rho, true)
    }

    fn saturation_impl(
        &self,
        space: &ProjectiveSpace<'_>,
        rho: usize,
        parallel: bool,
    ) -> Result<SaturationCertificate> {
        let coverage = self.coverage(space, rho, parallel)?;
        Ok(SaturationCertificate::from_coverage(space, &coverage))
    }

    /// Every point not covered by `L_U` (`rho = 1`) or its secant lines
    /// (`rho = 2`), in index order.
    pub fn uncovered_points(&self, space: &ProjectiveSpace<'_>, rho: usize) -> Result<Vec<ProjectivePoint>> {
        let coverage = self.coverage(space, rho, false)?;
        Ok((0..space.num_points())
            .filter(|&i| !coverage.get(i))
            .map(|i| space.point(i))
            .collect())
    }

    fn coverage(&self, space: &ProjectiveSpace<'_>, rho: usize, parallel: bool) -> Result<Bitmap> {
        let total = space.num_points();
        let coverage = match rho {
            1 => {
                let mut c = Bitmap::new(total);
                for &i in &self.indices {
                    c.set(i);
                }
                c
            }
            2 if parallel => (0..self.indices.len())
                .into_par_iter()
                .fold(
                    || Bitmap::new(total),
                    |mut bm, i| {
                        self.mark_secants_from(space, i, &mut bm);
                        bm
                    },
                )
                .reduce(|| Bitmap::new(total), Bitmap::union),
            2 => {
                let mut bm = Bitmap::new(total);
                for i in 0..self.indices.len() {
                    self.mark_secants_from(space, i, &mut bm);
                }
                bm
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "rho = {rho}; only rho = 1 (points) and rho = 2 (secant lines) are implemented"
                )))
            }
        };
        Ok(coverage)
    }

    /// Marks every line joining point `i` to a later point of the set. Lines
    /// already drawn through `i` are skipped.
    fn mark_secants_from(&self, space: &ProjectiveSpace<'_>, i: usize, bm: &mut Bitmap) {
        let n = self.points.len();
        let mut done = vec![false; n];
        let mut line = Vec::with_capacity(space.tower().qm() as usize + 1);
        let p = self.points[i].coords();
        for j in i + 1..n {
            if done[j] {
                continue;
            }
            line.clear();
            space.line_indices(p, self.points[j].coords(), &mut line);
            for &idx in &line {
                bm.set(idx);
                if let Ok(pos) = self.indices.binary_search(&idx) {
                    done[pos] = true;
                }
            }
        }
    }

    pub fn report(&self, space: &ProjectiveSpace<'_>) -> Result<LinsetReport> {
        let cert = self.saturation(space, 2)?;
        Ok(LinsetReport {
            rank: self.rank(),
            size: self.size(),
            spectrum: self.spectrum.clone(),
            scattered: self.max_weight() == 1,
            saturating_rho2: cert.saturated,
            witness: cert.witness,
        })
    }
}

fn point_weight(tower: &Tower, u: &FqSubspace, p: &ProjectivePoint) -> Result<usize> {
    intersect_dim(tower, u, &ProjectiveSubspace::point(p).as_fq(tower))
}

/// Dense coverage bitmap over the points of a projective space.
#[derive(Clone, Debug)]
struct Bitmap {
    words: Vec<u64>,
    len: usize,
}

impl Bitmap {
    fn new(len: usize) -> Self {
        Bitmap {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn union(mut self, other: Bitmap) -> Bitmap {
        for (a, b) in self.words.iter_mut().zip(other.words) {
            *a |= b;
        }
        self
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first_unset(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != u64::MAX)
            .map(|(i, w)| i * 64 + w.trailing_ones() as usize)
            .filter(|&i| i < self.len)
    }
}

/// Result of a saturation scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationCertificate {
    pub saturated: bool,
    /// The least uncovered point, if any.
    pub witness: Option<ProjectivePoint>,
    pub covered_count: usize,
}

impl SaturationCertificate {
    fn from_coverage(space: &ProjectiveSpace<'_>, bm: &Bitmap) -> Self {
        let witness = bm.first_unset().map(|i| space.point(i));
        SaturationCertificate {
            saturated: witness.is_none(),
            witness,
            covered_count: bm.count(),
        }
    }
}

/// Summary of a linear set, as emitted by the command line tool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinsetReport {
    pub rank: usize,
    pub size: usize,
    pub spectrum: Vec<usize>,
    pub scattered: bool,
    pub saturating_rho2: bool,
    pub witness: Option<ProjectivePoint>,
}

/// `L_U` of a nonzero subspace.
pub fn linear_set(space: &ProjectiveSpace<'_>, u: &FqSubspace) -> Result<LinearSet> {
    LinearSet::new(space, u)
}

/// `dim_{F_q}(U ∩ W)` for the projective subspace `PG(W)`.
pub fn weight(tower: &Tower, u: &FqSubspace, s: &ProjectiveSubspace) -> Result<usize> {
    if u.ambient_k() != s.ambient_k() {
        return Err(Error::AmbientMismatch {
            left: u.ambient_k(),
            right: s.ambient_k(),
        });
    }
    intersect_dim(tower, u, &s.as_fq(tower))
}

/// Scattered: `|L_U| = (q^n-1)/(q-1)`, equivalently every point has weight 1.
pub fn is_scattered(space: &ProjectiveSpace<'_>, u: &FqSubspace) -> Result<bool> {
    let ls = LinearSet::new(space, u)?;
    let by_size = ls.size() as u64 == theta(space.tower().q() as u64, ls.rank());
    let by_weight = ls.max_weight() == 1;
    if by_size != by_weight {
        return Err(Error::Invariant("size and weight characterizations disagree".into()));
    }
    Ok(by_size)
}

/// `U` spans `F_{q^m}^k` and every `(h-1)`-dimensional projective subspace
/// has weight at most `h`.
///
/// Supported subspace families: points (`h = 1`), hyperplanes (`h = k - 1`)
/// and the whole space (`h = k`), which covers every `h` when `k <= 3`.
pub fn is_h_scattered(space: &ProjectiveSpace<'_>, u: &FqSubspace, h: usize) -> Result<bool> {
    let tower = space.tower();
    let k = space.k();
    if h == 0 || h > k {
        return Err(Error::OutOfRange(format!("h = {h} must lie in 1..={k}")));
    }
    if u.ambient_k() != k {
        return Err(Error::AmbientMismatch {
            left: k,
            right: u.ambient_k(),
        });
    }
    if u.dim() == 0 || u.fqm_rank(tower) != k {
        return Ok(false);
    }
    if h == k {
        return Ok(u.dim() <= k);
    }
    if h == 1 {
        return Ok(LinearSet::new(space, u)?.max_weight() <= 1);
    }
    if h + 1 == k {
        return Ok(max_hyperplane_weight(space, u)? <= h);
    }
    Err(Error::Infeasible(format!(
        "enumerating {}-dimensional subspaces of PG({}, q^m)",
        h - 1,
        k - 1
    )))
}

/// `max dim_{F_q}(U ∩ H)` over all `F_{q^m}`-hyperplanes `H`, enumerated as `x^⊥`.
pub fn max_hyperplane_weight(space: &ProjectiveSpace<'_>, u: &FqSubspace) -> Result<usize> {
    let tower = space.tower();
    if space.k() < 2 {
        return Err(Error::OutOfRange("hyperplanes need k >= 2".into()));
    }
    let mut best = 0;
    for x in space.points() {
        let h = ProjectiveSubspace::hyperplane(tower, x.coords())?;
        best = best.max(weight(tower, u, &h)?);
    }
    Ok(best)
}

/// Saturation certificate of `L_U` for `rho` spanning points.
pub fn is_saturating(space: &ProjectiveSpace<'_>, u: &FqSubspace, rho: usize) -> Result<SaturationCertificate> {
    if !(1..=2).contains(&rho) {
        return Err(Error::Unsupported(format!("rho = {rho}")));
    }
    LinearSet::new(space, u)?.saturation(space, rho)
}

/// What happened when a subspace was extended by one vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub subspace: FqSubspace,
    pub size_before: usize,
    pub size_after: usize,
    /// Every point of `L_{U_1} \ L_U` has weight 1 in `L_{U_1}`.
    pub new_points_weight_one: bool,
    /// `<v>_{F_{q^m}} ∩ <U>_{F_{q^m}} = 0`.
    pub fqm_independent: bool,
    /// `|L_{U_1}| = |L_U| + q^{dim U}`, checked when `fqm_independent`.
    pub size_formula_holds: Option<bool>,
}

/// `U_1 = U ⊕ <v>_{F_q}` for a vector `v` whose point lies outside `L_U`.
pub fn extend(space: &ProjectiveSpace<'_>, u: &FqSubspace, v: &[Elem]) -> Result<Extension> {
    let tower = space.tower();
    let point = space.normalize(v)?;
    if u.ambient_k() != space.k() {
        return Err(Error::AmbientMismatch {
            left: space.k(),
            right: u.ambient_k(),
        });
    }
    let before = if u.dim() == 0 {
        None
    } else {
        Some(LinearSet::new(space, u)?)
    };
    if before.as_ref().is_some_and(|ls| ls.weight_of(&point) > 0) {
        return Err(Error::Precondition("<v> already belongs to L_U".into()));
    }
    let line = FqSubspace::from_vectors(tower, space.k(), &[v.to_vec()])?;
    let u1 = u.sum(tower, &line)?;
    let after = LinearSet::new(space, &u1)?;
    let new_points_weight_one = after
        .points()
        .iter()
        .zip(after.weights())
        .filter(|(p, _)| before.as_ref().is_none_or(|ls| ls.weight_of(p) == 0))
        .all(|(_, &w)| w == 1);
    let mut gens = u.generators(tower);
    let rank_u = linalg::rank(tower.fqm(), &gens);
    gens.push(v.to_vec());
    let fqm_independent = linalg::rank(tower.fqm(), &gens) == rank_u + 1;
    let size_before = before.as_ref().map_or(0, LinearSet::size);
    let size_formula_holds =
        fqm_independent.then(|| after.size() as u64 == size_before as u64 + (tower.q() as u64).pow(u.dim() as u32));
    Ok(Extension {
        subspace: u1,
        size_before,
        size_after: after.size(),
        new_points_weight_one,
        fqm_independent,
        size_formula_holds,
    })
}

/// Result of testing `|L_U| >= q^{n-1} + 1` on the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SizeBound {
    pub holds: bool,
    /// No point of weight 1, so the bound says nothing.
    pub vacuous: bool,
    pub size: usize,
    pub bound: u64,
}

/// For `U ⊆ F_{q^m}^2` of rank `1 < n <= m` whose linear set has a point of weight 1.
pub fn check_size_lower_bound(space: &ProjectiveSpace<'_>, u: &FqSubspace) -> Result<SizeBound> {
    let tower = space.tower();
    if space.k() != 2 {
        return Err(Error::Precondition("the size bound lives on PG(1, q^m)".into()));
    }
    let n = u.dim();
    if n <= 1 || n > tower.m() {
        return Err(Error::Precondition(format!(
            "rank {n} outside 1 < n <= m = {}",
            tower.m()
        )));
    }
    let ls = LinearSet::new(space, u)?;
    let bound = (tower.q() as u64).pow(n as u32 - 1) + 1;
    let vacuous = !ls.weights().contains(&1);
    Ok(SizeBound {
        holds: vacuous || ls.size() as u64 >= bound,
        vacuous,
        size: ls.size(),
        bound,
    })
}
