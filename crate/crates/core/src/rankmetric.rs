//! Linear rank-metric codes in `F_{q^m}^n` and their systems.
//!
//! A non-degenerate `[n, k, d]` code with generator `G` corresponds to the
//! `F_q`-span `U ⊆ F_{q^m}^k` of the columns of `G`; the rank weight of a
//! codeword `xG` is `n - dim_{F_q}(U ∩ x^⊥)`. Both the direct and the
//! geometric computation of weights are exposed so one can check the other.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{intersect_dim, FqSubspace, ProjectiveSpace, ProjectiveSubspace};
use crate::gf::{Elem, Tower};
use crate::linalg::{self, Matrix};
use crate::linset::max_hyperplane_weight;

/// Exhaustive scans visit one message per point of `PG(k-1, q^m)` and are
/// limited to this many.
pub const MAX_MESSAGES: u64 = 1 << 24;

/// `dim_{F_q} <v_1, .., v_n>_{F_q}`.
pub fn rank_weight(tower: &Tower, v: &[Elem]) -> usize {
    let cols: Matrix = v.iter().map(|&c| tower.to_fq_coords(&[c])).collect();
    linalg::rank(tower.fq(), &cols)
}

/// A linear code given by a generator matrix with `F_{q^m}`-independent rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMetricCode {
    generator: Matrix,
    n: usize,
    degenerate: bool,
}

impl RankMetricCode {
    pub fn new(tower: &Tower, generator: Matrix) -> Result<Self> {
        let n = generator
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::OutOfRange("generator matrix has no rows".into()))?;
        for row in &generator {
            if row.len() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for &c in row {
                tower.fqm().elem(c.0)?;
            }
        }
        if linalg::rank(tower.fqm(), &generator) != generator.len() {
            return Err(Error::DependentRows);
        }
        let columns = transpose(&generator);
        let degenerate = FqSubspace::from_vectors(tower, generator.len(), &columns)?.dim() < n;
        Ok(RankMetricCode {
            generator,
            n,
            degenerate,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.generator
    }

    /// Columns of the generator are `F_q`-dependent.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// `x G`.
    pub fn encode(&self, tower: &Tower, x: &[Elem]) -> Vec<Elem> {
        linalg::vec_mat(tower.fqm(), x, &self.generator)
    }

    fn message_space<'t>(&self, tower: &'t Tower) -> Result<ProjectiveSpace<'t>> {
        let qm = tower.qm() as u64;
        let points = qm.checked_pow(self.k() as u32).map(|s| (s - 1) / (qm - 1));
        if points.is_none_or(|s| s > MAX_MESSAGES) {
            return Err(Error::Infeasible(format!(
                "exhaustive scan over (q^m)^k with q^m = {}, k = {}",
                tower.qm(),
                self.k()
            )));
        }
        ProjectiveSpace::new(tower, self.k())
    }

    /// Minimum rank weight of a nonzero codeword. Weights are invariant under
    /// `F_{q^m}^*`-scaling, so one message per projective point suffices.
    pub fn min_distance(&self, tower: &Tower) -> Result<usize> {
        let space = self.message_space(tower)?;
        Ok((0..space.num_points())
            .into_par_iter()
            .map(|i| rank_weight(tower, &self.encode(tower, space.point(i).coords())))
            .min()
            .expect("k >= 1"))
    }

    /// Number of codewords of each rank weight, the zero word included.
    pub fn weight_distribution(&self, tower: &Tower) -> Result<BTreeMap<usize, u64>> {
        let space = self.message_space(tower)?;
        let weights: Vec<usize> = (0..space.num_points())
            .into_par_iter()
            .map(|i| rank_weight(tower, &self.encode(tower, space.point(i).coords())))
            .collect();
        let scalars = tower.qm() as u64 - 1;
        let mut hist = BTreeMap::from([(0usize, 1u64)]);
        for w in weights {
            *hist.entry(w).or_default() += scalars;
        }
        Ok(hist)
    }

    /// `n - max_H dim_{F_q}(U ∩ H)` over the hyperplanes of `F_{q^m}^k`.
    pub fn min_distance_geometric(&self, tower: &Tower) -> Result<usize> {
        if self.k() < 2 {
            return Err(Error::Precondition("the geometric route needs k >= 2".into()));
        }
        let u = system_of(tower, self)?;
        let space = self.message_space(tower)?;
        Ok(self.n - max_hyperplane_weight(&space, &u)?)
    }

    /// `w(xG) = n - dim_{F_q}(U ∩ x^⊥)`.
    pub fn codeword_weight_geometric(&self, tower: &Tower, x: &[Elem]) -> Result<usize> {
        if x.len() != self.k() {
            return Err(Error::AmbientMismatch {
                left: self.k(),
                right: x.len(),
            });
        }
        let u = system_of(tower, self)?;
        let h = if x.iter().all(|c| c.is_zero()) {
            ProjectiveSubspace::whole(self.k())
        } else {
            ProjectiveSubspace::hyperplane(tower, x)?
        };
        Ok(self.n - intersect_dim(tower, &u, &h.as_fq(tower))?)
    }

    /// Attains `mk = max(m, n)(min(m, n) - d + 1)`.
    pub fn is_mrd(&self, tower: &Tower) -> Result<bool> {
        let d = self.min_distance(tower)?;
        Ok(singleton_bound(self.n, d, tower.m()) == Some((tower.m() * self.k()) as u64))
    }

    /// The code `C A` for an invertible `n × n` matrix `A` over `F_q`.
    pub fn apply_matrix(&self, tower: &Tower, a: &[Vec<Elem>]) -> Result<RankMetricCode> {
        if a.len() != self.n || a.iter().any(|r| r.len() != self.n) {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: a.len(),
            });
        }
        for &c in a.iter().flatten() {
            tower.fq().elem(c.0)?;
        }
        if !linalg::is_invertible(tower.fq(), a) {
            return Err(Error::SingularMatrix);
        }
        RankMetricCode::new(tower, linalg::mat_mul(tower.fqm(), &self.generator, a))
    }

    pub fn report(&self, tower: &Tower) -> Result<WeightReport> {
        let histogram = self.weight_distribution(tower)?;
        let d = histogram.keys().copied().find(|&w| w > 0).unwrap_or(0);
        Ok(WeightReport {
            n: self.n,
            k: self.k(),
            d,
            mrd: singleton_bound(self.n, d, tower.m()) == Some((tower.m() * self.k()) as u64),
            histogram,
        })
    }
}

/// Minimum distance and rank-weight histogram of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub mrd: bool,
    pub histogram: BTreeMap<usize, u64>,
}

fn transpose(m: &[Vec<Elem>]) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Right-hand side `max(m, n)(min(m, n) - d + 1)`, or `None` when `d > min(m, n) + 1`.
fn singleton_bound(n: usize, d: usize, m: usize) -> Option<u64> {
    let (lo, hi) = (m.min(n), m.max(n));
    (lo + 1).checked_sub(d).map(|x| (hi * x) as u64)
}

/// Whether `mk <= max(m, n)(min(m, n) - d + 1)`.
pub fn singleton_ok(n: usize, k: usize, d: usize, m: usize) -> bool {
    singleton_bound(n, d, m).is_some_and(|rhs| (m * k) as u64 <= rhs)
}

/// The `k × n` Moore matrix of `v` for `σ = x ↦ x^{q^s}`: row `i` is `σ^i(v)`.
pub fn moore_matrix(tower: &Tower, v: &[Elem], k: usize, s: usize) -> Result<Matrix> {
    if k == 0 || k > tower.m() {
        return Err(Error::OutOfRange(format!("k = {k} must lie in 1..={}", tower.m())));
    }
    Ok((0..k)
        .map(|i| v.iter().map(|&x| tower.frobenius(x, i * s)).collect())
        .collect())
}

/// A generalized Gabidulin code and whether the MRD property is guaranteed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gabidulin {
    pub code: RankMetricCode,
    /// `gcd(s, m) = 1`, i.e. `σ` generates `Gal(F_{q^m} / F_q)`.
    pub mrd_guaranteed: bool,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The code generated by `moore_matrix(v, k, s)`.
///
/// `gcd(s, m) != 1` is rejected unless `allow_any_sigma` is set, in which
/// case the result carries `mrd_guaranteed = false`.
pub fn gabidulin(tower: &Tower, v: &[Elem], k: usize, s: usize, allow_any_sigma: bool) -> Result<Gabidulin> {
    let n = v.len();
    if k == 0 || k > n || n > tower.m() {
        return Err(Error::OutOfRange(format!(
            "need 1 <= k <= n <= m, got k = {k}, n = {n}"
        )));
    }
    if rank_weight(tower, v) < n {
        return Err(Error::Precondition("entries of v are F_q-dependent".into()));
    }
    let mrd_guaranteed = gcd(s, tower.m()) == 1;
    if !mrd_guaranteed && !allow_any_sigma {
        return Err(Error::Precondition(format!(
            "gcd(s, m) = {} != 1; pass allow_any_sigma to build it anyway",
            gcd(s, tower.m())
        )));
    }
    let code = RankMetricCode::new(tower, moore_matrix(tower, v, k, s)?)?;
    Ok(Gabidulin { code, mrd_guaranteed })
}

/// The system of a non-degenerate code: the `F_q`-span of its columns.
pub fn system_of(tower: &Tower, c: &RankMetricCode) -> Result<FqSubspace> {
    if c.degenerate {
        return Err(Error::DegenerateCode);
    }
    FqSubspace::from_vectors(tower, c.k(), &transpose(&c.generator))
}

/// The code whose generator has the canonical basis of `U` as columns.
pub fn code_of(tower: &Tower, u: &FqSubspace) -> Result<RankMetricCode> {
    if u.dim() == 0 || u.fqm_rank(tower) != u.ambient_k() {
        return Err(Error::NotSpanning);
    }
    RankMetricCode::new(tower, transpose(&u.generators(tower)))
}

/// A `q`-polynomial `Σ a_i x^{q^i}` with `q`-degree below `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    coeffs: Vec<Elem>,
}

impl LinearizedPoly {
    pub fn new(tower: &Tower, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.len() > tower.m() {
            return Err(Error::OutOfRange(format!(
                "q-degree {} is not below m = {}",
                coeffs.len() - 1,
                tower.m()
            )));
        }
        for &c in &coeffs {
            tower.fqm().elem(c.0)?;
        }
        Ok(LinearizedPoly { coeffs })
    }

    /// `x^{q^i}`.
    pub fn monomial(tower: &Tower, i: usize) -> Result<Self> {
        let mut coeffs = vec![Elem::ZERO; i + 1];
        coeffs[i] = Elem::ONE;
        Self::new(tower, coeffs)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn eval(&self, tower: &Tower, x: Elem) -> Elem {
        let f = tower.fqm();
        self.coeffs
            .iter()
            .enumerate()
            .fold(Elem::ZERO, |acc, (i, &a)| f.add(acc, f.mul(a, tower.frobenius(x, i))))
    }

    /// `f(a)/a = f(b)/b` forces `b/a ∈ F_q`.
    ///
    /// Nonzero elements are grouped by `f(a)/a`; within a group, being
    /// `F_q`-proportional is an equivalence relation, so comparing every
    /// member with the first covers all pairs.
    pub fn is_scattered(&self, tower: &Tower) -> bool {
        let f = tower.fqm();
        let mut first_with_ratio: HashMap<Elem, Elem> = HashMap::new();
        for a in f.elements().skip(1) {
            let ratio = f.div(self.eval(tower, a), a).expect("a != 0");
            let b = *first_with_ratio.entry(ratio).or_insert(a);
            if !tower.is_in_fq(f.div(a, b).expect("b != 0")) {
                return false;
            }
        }
        true
    }
}
