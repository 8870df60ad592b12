//! Exhaustive and sampled checks of the saturation results in `PG(2, q^4)`.
//!
//! The non-existence of a rank-4 linear set whose secant lines cover the
//! plane reduces, up to `GL(3, q^4)`-equivalence, to two families of
//! subspaces:
//!
//! * `{(x, x^q, x^{q^2}) : x ∈ F_{q^4}}`, and
//! * `{(x, x^q, t u') : x ∈ Z, t ∈ F_q}` for a 3-dimensional `F_q`-subspace
//!   `Z ⊆ F_{q^4}` and `u' ∈ F_{q^4}^*`.
//!
//! The reduction itself is not recomputed here. What is checked is that
//! every member of both families leaves `<(0,0,1)>` uncovered, that the
//! rank-5 set `{(x, x^q, a) : x ∈ F_{q^4}, a ∈ F_q}` covers the plane, and
//! that random subspaces behave as predicted.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{random_invertible, random_nonzero_vector, random_subspace_with, FqSubspace, ProjectiveSpace};
use crate::gf::{Elem, Tower};
use crate::linalg;
use crate::linset::{check_size_lower_bound, extend, LinearSet, SaturationCertificate};

const M: usize = 4;

/// Parameters of `s_{q^m/q}(k, rho)`, with `rho` counting spanning points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub q: u32,
    pub m: usize,
    pub k: usize,
    pub rho: usize,
}

/// Known lower bound on the least rank of a saturating linear set.
pub fn s_lower_bound(bq: &BoundQuery) -> Result<i64> {
    Tower::for_q(bq.q, 1)?;
    if bq.rho == 0 || bq.k < 2 || bq.m == 0 {
        return Err(Error::OutOfRange(format!("invalid query {bq:?}")));
    }
    let (m, k, rho) = (bq.m as i64, bq.k as i64, bq.rho as i64);
    Ok(match (bq.q, bq.rho) {
        (2, 1) => m * (k - 1) + 1,
        (2, _) => (m * k - 1) / rho - m + rho,
        _ => m * k / rho - m + rho,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub query: BoundQuery,
    pub lower_bound: i64,
    pub expected: i64,
}

/// The bounds for `(m, k) = (4, 3)` together with their expected values.
pub fn bound_table() -> Result<Vec<BoundRow>> {
    [(3, 2, 4), (2, 2, 3), (2, 1, 9)]
        .into_iter()
        .map(|(q, rho, expected)| {
            let query = BoundQuery { q, m: 4, k: 3, rho };
            Ok(BoundRow {
                query,
                lower_bound: s_lower_bound(&query)?,
                expected,
            })
        })
        .collect()
}

fn check_desk_scale(q: u32) -> Result<()> {
    if q == 2 || q == 3 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "desk-scale limit: q must be 2 or 3, got {q}"
        )))
    }
}

fn check_tower(tower: &Tower) -> Result<()> {
    if tower.m() == M {
        Ok(())
    } else {
        Err(Error::Precondition(format!("needs m = 4, tower has m = {}", tower.m())))
    }
}

fn trace_subspace(tower: &Tower, xs: &[Elem], f: impl Fn(Elem) -> Vec<Elem>) -> FqSubspace {
    let gens: Vec<_> = xs.iter().map(|&x| f(x)).collect();
    FqSubspace::from_vectors(tower, 3, &gens).expect("vectors of length 3")
}

/// `{(x, x^q, x^{q^2}) : x ∈ F_{q^4}}`.
pub fn firstform_subspace(tower: &Tower) -> Result<FqSubspace> {
    check_tower(tower)?;
    Ok(trace_subspace(tower, &tower.fq_basis(), |x| {
        vec![x, tower.frobenius(x, 1), tower.frobenius(x, 2)]
    }))
}

/// `{(x, x^q, a) : x ∈ F_{q^4}, a ∈ F_q}`, a scattered linear set of rank 5.
pub fn example_subspace(tower: &Tower) -> Result<FqSubspace> {
    check_tower(tower)?;
    let mut gens: Vec<Vec<Elem>> = tower
        .fq_basis()
        .into_iter()
        .map(|x| vec![x, tower.frobenius(x, 1), Elem::ZERO])
        .collect();
    gens.push(vec![Elem::ZERO, Elem::ZERO, Elem::ONE]);
    FqSubspace::from_vectors(tower, 3, &gens)
}

/// `{(x, x^q, 0) : x ∈ F_{q^4}} ⊕ <(1, 0, 0)>`: rank 5 inside the line `z = 0`.
pub fn line_rank5_subspace(tower: &Tower) -> Result<FqSubspace> {
    check_tower(tower)?;
    let mut gens: Vec<Vec<Elem>> = tower
        .fq_basis()
        .into_iter()
        .map(|x| vec![x, tower.frobenius(x, 1), Elem::ZERO])
        .collect();
    gens.push(vec![Elem::ONE, Elem::ZERO, Elem::ZERO]);
    FqSubspace::from_vectors(tower, 3, &gens)
}

/// One member `U(Z, u')` of the second family.
#[derive(Clone, Debug)]
pub struct SecondFormCandidate {
    pub z_index: usize,
    pub u_index: usize,
    pub subspace: FqSubspace,
}

/// Every 3-dimensional `F_q`-subspace `Z ⊆ F_{q^4}`, one RREF basis each.
pub fn z_subspaces(tower: &Tower) -> Result<Vec<Vec<Elem>>> {
    check_tower(tower)?;
    linalg::echelon_bases(tower.fq(), 3, M)
        .into_iter()
        .map(|rows| rows.iter().map(|r| tower.fqm().from_coeffs(r)).collect())
        .collect()
}

/// Representatives of `F_{q^4}^* / F_q^*`: elements whose highest nonzero
/// coordinate over `F_q` is 1. Scaling `u'` by `F_q^*` does not change
/// `U(Z, u')` because `t` already ranges over `F_q`.
pub fn u_representatives(tower: &Tower) -> Vec<Elem> {
    let f = tower.fqm();
    f.elements()
        .skip(1)
        .filter(|&a| f.coeffs(a).iter().rev().find(|c| !c.is_zero()) == Some(&Elem::ONE))
        .collect()
}

/// All `U(Z, u') = {(x, x^q, t u') : x ∈ Z, t ∈ F_q}`, `Z`-major.
pub fn secondform_family(tower: &Tower) -> Result<impl Iterator<Item = SecondFormCandidate> + '_> {
    let zs = z_subspaces(tower)?;
    let us = u_representatives(tower);
    Ok(zs.into_iter().enumerate().flat_map(move |(zi, z)| {
        us.clone().into_iter().enumerate().map(move |(ui, u)| {
            let mut gens: Vec<Vec<Elem>> = z.iter().map(|&x| vec![x, tower.frobenius(x, 1), Elem::ZERO]).collect();
            gens.push(vec![Elem::ZERO, Elem::ZERO, u]);
            SecondFormCandidate {
                z_index: zi,
                u_index: ui,
                subspace: FqSubspace::from_vectors(tower, 3, &gens).expect("length 3"),
            }
        })
    }))
}

/// Saturation outcome of one rank-4 candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateResult {
    pub certificate: SaturationCertificate,
    /// `<(0,0,1)>` is neither a point of `L_U` nor on any secant line.
    pub e3_uncovered: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondFormResult {
    pub z_index: usize,
    pub u_index: usize,
    #[serde(flatten)]
    pub result: CandidateResult,
}

/// Outcome of checking both rank-4 families and the rank-5 example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremMainReport {
    pub q: u32,
    pub points: usize,
    pub rank4_candidates: usize,
    /// No rank-4 candidate covers the plane.
    pub rank4_all_unsaturated: bool,
    /// Number of rank-4 candidates in which `<(0,0,1)>` is uncovered.
    pub e3_uncovered_count: usize,
    pub example_saturating: bool,
    /// Every rank-4 candidate is unsaturated with `<(0,0,1)>` uncovered, and
    /// the example covers the plane.
    pub conclusion: bool,
    pub firstform_result: CandidateResult,
    pub secondform_results: Vec<SecondFormResult>,
    pub example_result: SaturationCertificate,
}

impl TheoremMainReport {
    pub fn new(
        q: u32,
        points: usize,
        firstform_result: CandidateResult,
        secondform_results: Vec<SecondFormResult>,
        example_result: SaturationCertificate,
    ) -> Self {
        let all = || std::iter::once(&firstform_result).chain(secondform_results.iter().map(|r| &r.result));
        let rank4_all_unsaturated = all().all(|r| !r.certificate.saturated);
        let e3_uncovered_count = all().filter(|r| r.e3_uncovered).count();
        let rank4_candidates = 1 + secondform_results.len();
        let example_saturating = example_result.saturated && example_result.covered_count == points;
        TheoremMainReport {
            q,
            points,
            rank4_candidates,
            rank4_all_unsaturated,
            e3_uncovered_count,
            example_saturating,
            conclusion: rank4_all_unsaturated && e3_uncovered_count == rank4_candidates && example_saturating,
            firstform_result,
            secondform_results,
            example_result,
        }
    }
}

fn secant_certificate(space: &ProjectiveSpace<'_>, u: &FqSubspace) -> Result<SaturationCertificate> {
    LinearSet::new(space, u)?.saturation(space, 2)
}

/// Certificate plus the status of `<(0,0,1)>`, the least point of the plane.
pub fn candidate_result(space: &ProjectiveSpace<'_>, u: &FqSubspace) -> Result<CandidateResult> {
    let uncovered = LinearSet::new(space, u)?.uncovered_points(space, 2)?;
    let e3 = space.point(0);
    Ok(CandidateResult {
        e3_uncovered: uncovered.first() == Some(&e3),
        certificate: SaturationCertificate {
            saturated: uncovered.is_empty(),
            witness: uncovered.first().cloned(),
            covered_count: space.num_points() - uncovered.len(),
        },
    })
}

/// Checks the two rank-4 families and the rank-5 example for `q ∈ {2, 3}`.
/// Candidates are processed on the rayon pool; the report is independent
/// of the number of threads.
pub fn verify_theorem_main(q: u32) -> Result<TheoremMainReport> {
    check_desk_scale(q)?;
    let tower = Tower::for_q(q, M)?;
    let space = ProjectiveSpace::new(&tower, 3)?;
    let first = candidate_result(&space, &firstform_subspace(&tower)?)?;
    let candidates: Vec<SecondFormCandidate> = secondform_family(&tower)?.collect();
    let second = candidates
        .par_iter()
        .map(|c| {
            Ok(SecondFormResult {
                z_index: c.z_index,
                u_index: c.u_index,
                result: candidate_result(&space, &c.subspace)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let example = secant_certificate(&space, &example_subspace(&tower)?)?;
    Ok(TheoremMainReport::new(q, space.num_points(), first, second, example))
}

/// Random rank-4 subspaces that turned out to cover the plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RandomScanReport {
    pub q: u32,
    pub trials: usize,
    pub seed: u64,
    pub saturating: usize,
    /// Generators of each offending subspace, as element codes.
    pub violations: Vec<Vec<Vec<Elem>>>,
}

fn sample_subspaces(tower: &Tower, dim: usize, trials: usize, seed: u64) -> Result<Vec<FqSubspace>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| random_subspace_with(tower, dim, 3, &mut rng))
        .collect()
}

/// Samples `trials` random 4-dimensional subspaces of `F_{q^4}^3` and
/// records every one whose secant lines cover the plane.
pub fn random_rank4_never_saturating(q: u32, trials: usize, seed: u64) -> Result<RandomScanReport> {
    check_desk_scale(q)?;
    let tower = Tower::for_q(q, M)?;
    let space = ProjectiveSpace::new(&tower, 3)?;
    let samples = sample_subspaces(&tower, 4, trials, seed)?;
    let certs = samples
        .par_iter()
        .map(|u| secant_certificate(&space, u))
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<_> = samples
        .iter()
        .zip(&certs)
        .filter(|(_, c)| c.saturated)
        .map(|(u, _)| u.generators(&tower))
        .collect();
    Ok(RandomScanReport {
        q,
        trials,
        seed,
        saturating: violations.len(),
        violations,
    })
}

/// The six possible sizes of a rank-5 linear set in `PG(2, q^4)`.
pub fn rank5_sizes(q: u64) -> [u64; 6] {
    let q2 = q * q;
    let q3 = q2 * q;
    let q4 = q3 * q;
    [
        q4 + 1,
        q4 + q2 + 1,
        q4 + q3 + 1,
        q4 + q3 + q2 + 1,
        q4 + q3 + q2 - q + 1,
        q4 + q3 + q2 + q + 1,
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank5Census {
    pub q: u32,
    pub trials: usize,
    pub seed: u64,
    /// Size of `L_U` → number of samples.
    pub histogram: BTreeMap<usize, usize>,
    pub allowed_sizes: Vec<u64>,
    pub sizes_ok: bool,
    /// Samples whose linear set lies on a line.
    pub lines: usize,
    /// Samples violating "saturating iff not a line".
    pub coverage_mismatches: usize,
    pub coverage_ok: bool,
}

/// Samples random rank-5 subspaces of `F_{q^4}^3`, checks each size against
/// [`rank5_sizes`] and that exactly the non-lines are saturating.
pub fn rank5_size_census(q: u32, trials: usize, seed: u64) -> Result<Rank5Census> {
    check_desk_scale(q)?;
    let tower = Tower::for_q(q, M)?;
    let space = ProjectiveSpace::new(&tower, 3)?;
    let samples = sample_subspaces(&tower, 5, trials, seed)?;
    let outcomes = samples
        .par_iter()
        .map(|u| {
            let ls = LinearSet::new(&space, u)?;
            let on_line = u.fqm_rank(&tower) <= 2;
            let saturated = ls.saturation(&space, 2)?.saturated;
            Ok((ls.size(), on_line, saturated))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut allowed = rank5_sizes(q as u64).to_vec();
    allowed.sort_unstable();
    let mut histogram = BTreeMap::new();
    for &(size, _, _) in &outcomes {
        *histogram.entry(size).or_insert(0) += 1;
    }
    let sizes_ok = histogram.keys().all(|&s| allowed.contains(&(s as u64)));
    let coverage_mismatches = outcomes.iter().filter(|&&(_, line, sat)| sat == line).count();
    Ok(Rank5Census {
        q,
        trials,
        seed,
        histogram,
        allowed_sizes: allowed,
        sizes_ok,
        lines: outcomes.iter().filter(|o| o.1).count(),
        coverage_mismatches,
        coverage_ok: coverage_mismatches == 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentitiesReport {
    pub q: u32,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub ranks: Vec<usize>,
    pub trials_per_rank: usize,
    pub checked: usize,
    pub failures: usize,
}

/// Samples `trials` subspaces of every rank `1..=min(6, 4k)` in `F_{q^4}^k`
/// and checks the counting identities of each linear set.
pub fn identities_scan(q: u32, k: usize, trials: usize, seed: u64) -> Result<IdentitiesReport> {
    check_desk_scale(q)?;
    if !(2..=3).contains(&k) {
        return Err(Error::Unsupported(format!(
            "desk-scale limit: k must be 2 or 3, got {k}"
        )));
    }
    let tower = Tower::for_q(q, M)?;
    let space = ProjectiveSpace::new(&tower, k)?;
    let ranks: Vec<usize> = (1..=6.min(M * k)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = ranks
        .iter()
        .flat_map(|&n| (0..trials).map(move |_| n))
        .map(|n| random_subspace_with(&tower, n, k, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let failures = samples
        .par_iter()
        .map(|u| match LinearSet::new(&space, u) {
            Ok(ls) => Ok(!ls.identities().all()),
            Err(Error::Invariant(_)) => Ok(true),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&f| f)
        .count();
    Ok(IdentitiesReport {
        q,
        m: M,
        k,
        seed,
        ranks,
        trials_per_rank: trials,
        checked: samples.len(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeBoundScan {
    pub q: u32,
    pub rank: usize,
    pub checked: usize,
    pub skipped_without_weight_one: usize,
    pub min_size: usize,
    pub bound: u64,
    pub failures: usize,
}

/// Draws rank-`n` subspaces of `F_{q^4}^2` until `trials` of them have a
/// point of weight 1, and checks `|L_U| >= q^{n-1} + 1` on those.
pub fn size_bound_scan(q: u32, n: usize, trials: usize, seed: u64) -> Result<SizeBoundScan> {
    check_desk_scale(q)?;
    let tower = Tower::for_q(q, M)?;
    let space = ProjectiveSpace::new(&tower, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut skipped, mut failures) = (0, 0, 0);
    let mut min_size = usize::MAX;
    let mut bound = 0;
    while checked < trials {
        let u = random_subspace_with(&tower, n, 2, &mut rng)?;
        let b = check_size_lower_bound(&space, &u)?;
        bound = b.bound;
        if b.vacuous {
            skipped += 1;
            continue;
        }
        checked += 1;
        min_size = min_size.min(b.size);
        failures += usize::from(!b.holds);
    }
    Ok(SizeBoundScan {
        q,
        rank: n,
        checked,
        skipped_without_weight_one: skipped,
        min_size,
        bound,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionScan {
    pub q: u32,
    pub trials: usize,
    pub weight_one_failures: usize,
    pub size_failures: usize,
}

/// Random pairs `(U, v)` in `F_{q^4}^3` with `<v>` independent of `<U>` over
/// `F_{q^4}`: `U` is drawn inside a plane of `F_{q^4}^3`, `v` off it, and
/// both are moved by a random element of `GL(3, q^4)`.
pub fn extension_scan(q: u32, trials: usize, seed: u64) -> Result<ExtensionScan> {
    check_desk_scale(q)?;
    let tower = Tower::for_q(q, M)?;
    let space = ProjectiveSpace::new(&tower, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut weight_one_failures, mut size_failures) = (0, 0);
    for _ in 0..trials {
        let dim = rng.gen_range(1..=4);
        let base = random_subspace_with(&tower, dim, 2, &mut rng)?;
        let gens: Vec<Vec<Elem>> = base
            .generators(&tower)
            .into_iter()
            .map(|g| vec![g[0], g[1], Elem::ZERO])
            .collect();
        let mut v = random_nonzero_vector(&tower, 3, &mut rng);
        if v[2].is_zero() {
            v[2] = Elem::ONE;
        }
        let phi = random_invertible(&tower, 3, &mut rng);
        let u = FqSubspace::from_vectors(&tower, 3, &gens)?.image(&tower, &phi)?;
        let v = linalg::vec_mat(tower.fqm(), &v, &phi);
        let ext = extend(&space, &u, &v)?;
        if !ext.fqm_independent {
            return Err(Error::Invariant("sampled v lies in <U>".into()));
        }
        weight_one_failures += usize::from(!ext.new_points_weight_one);
        size_failures += usize::from(ext.size_formula_holds != Some(true));
    }
    Ok(ExtensionScan {
        q,
        trials,
        weight_one_failures,
        size_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ProjectiveSubspace;
    use crate::linset::weight;

    #[test]
    fn bounds() {
        for row in bound_table().unwrap() {
            assert_eq!(row.lower_bound, row.expected, "{row:?}");
        }
        assert!(s_lower_bound(&BoundQuery {
            q: 6,
            m: 4,
            k: 3,
            rho: 2
        })
        .is_err());
    }

    #[test]
    fn family_sizes() {
        let t = Tower::for_q(2, 4).unwrap();
        assert_eq!(z_subspaces(&t).unwrap().len(), 15);
        assert_eq!(u_representatives(&t).len(), 15);
        assert_eq!(secondform_family(&t).unwrap().count(), 225);
        let t3 = Tower::for_q(3, 4).unwrap();
        assert_eq!(u_representatives(&t3).len(), 40);
        assert_eq!(secondform_family(&t3).unwrap().count(), 1600);
    }

    #[test]
    fn secondform_members_have_rank4_and_a_weight3_line() {
        let t = Tower::for_q(3, 4).unwrap();
        let z0 = ProjectiveSubspace::new(
            &t,
            3,
            vec![
                vec![Elem::ONE, Elem::ZERO, Elem::ZERO],
                vec![Elem::ZERO, Elem::ONE, Elem::ZERO],
            ],
        )
        .unwrap();
        for c in secondform_family(&t).unwrap().step_by(37) {
            assert_eq!(c.subspace.dim(), 4);
            assert_eq!(weight(&t, &c.subspace, &z0).unwrap(), 3);
        }
    }

    #[test]
    fn firstform_line_weights_at_most_two() {
        let t = Tower::for_q(2, 4).unwrap();
        let s = ProjectiveSpace::new(&t, 3).unwrap();
        let u = firstform_subspace(&t).unwrap();
        assert_eq!(u.dim(), 4);
        assert_eq!(crate::linset::max_hyperplane_weight(&s, &u).unwrap(), 2);
    }

    #[test]
    fn rejects_large_q() {
        assert!(matches!(verify_theorem_main(7), Err(Error::Unsupported(_))));
        assert!(matches!(verify_theorem_main(4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn main_check_q2() {
        let r = verify_theorem_main(2).unwrap();
        assert_eq!((r.points, r.rank4_candidates), (273, 226));
        assert!(r.rank4_all_unsaturated);
        assert!(r.example_saturating);
        let first = &r.firstform_result;
        assert!(first.e3_uncovered);
        assert_eq!(first.certificate.covered_count, 271);
        // (0, 0, u') lies in every second-form U, so <(0,0,1)> is a point of L_U.
        assert!(r.secondform_results.iter().all(|c| !c.result.e3_uncovered));
        assert_eq!(r.e3_uncovered_count, 1);
        assert!(!r.conclusion);
    }

    #[test]
    fn e3_is_a_point_of_every_secondform_set() {
        let t = Tower::for_q(2, 4).unwrap();
        let e3 = ProjectiveSubspace::point(&ProjectiveSpace::new(&t, 3).unwrap().point(0));
        for c in secondform_family(&t).unwrap() {
            assert_eq!(weight(&t, &c.subspace, &e3).unwrap(), 1);
        }
    }

    #[test]
    fn conclusion_logic() {
        let r = verify_theorem_main(2).unwrap();
        let only_first = TheoremMainReport::new(
            2,
            r.points,
            r.firstform_result.clone(),
            vec![],
            r.example_result.clone(),
        );
        assert!(only_first.conclusion);

        let t = Tower::for_q(2, 4).unwrap();
        let s = ProjectiveSpace::new(&t, 3).unwrap();
        let injected = candidate_result(&s, &example_subspace(&t).unwrap()).unwrap();
        let tampered = TheoremMainReport::new(
            2,
            r.points,
            r.firstform_result,
            vec![SecondFormResult {
                z_index: 0,
                u_index: 0,
                result: injected,
            }],
            r.example_result,
        );
        assert!(!tampered.rank4_all_unsaturated);
        assert!(!tampered.conclusion);
    }

    #[test]
    fn empty_random_scan() {
        let r = random_rank4_never_saturating(2, 0, 1).unwrap();
        assert_eq!((r.trials, r.saturating), (0, 0));
    }

    #[test]
    fn constructed_line_is_not_saturating() {
        let t = Tower::for_q(2, 4).unwrap();
        let s = ProjectiveSpace::new(&t, 3).unwrap();
        let u = line_rank5_subspace(&t).unwrap();
        assert_eq!(u.dim(), 5);
        let ls = LinearSet::new(&s, &u).unwrap();
        assert_eq!(ls.size(), 17);
        assert!(!ls.saturation(&s, 2).unwrap().saturated);
    }

    #[test]
    fn rank5_sizes_at_q2() {
        let mut s = rank5_sizes(2).to_vec();
        s.sort();
        assert_eq!(s, vec![17, 21, 25, 27, 29, 31]);
    }
}
