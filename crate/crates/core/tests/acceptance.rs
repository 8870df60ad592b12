//! Acceptance run: one line per criterion.
//!
//! Exits nonzero if a criterion fails unexpectedly, or if a criterion listed
//! as a known failure passes or fails in a different way than recorded.

use std::time::{Duration, Instant};

use linsat::geometry::random_subspace_with;
use linsat::linset::LinearSet;
use linsat::rankmetric::{gabidulin, rank_weight, LinearizedPoly, RankMetricCode};
use linsat::verify::{self, TheoremMainReport};
use linsat::{Elem, ProjectiveSpace, Tower};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Check {
    id: u8,
    title: &'static str,
    pass: bool,
    detail: String,
    /// `Some(matches)` for a criterion that is expected to fail; `matches`
    /// says whether it failed in exactly the recorded way.
    known_failure: Option<bool>,
}

fn check(id: u8, title: &'static str, pass: bool, detail: String) -> Check {
    Check {
        id,
        title,
        pass,
        detail,
        known_failure: None,
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> (T, Duration) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let start = Instant::now();
    let out = pool.install(f);
    (out, start.elapsed())
}

/// The strict form requires `<(0,0,1)>` uncovered in every rank-4 candidate.
/// In the second family `(0, 0, u')` lies in `U`, so `<(0,0,1)>` is a point of
/// `L_U`; only the first-family candidate can meet it. The recorded failure:
/// every candidate is non-saturating, `<(0,0,1)>` is uncovered exactly in the
/// first-family candidate, and the example covers the plane.
fn theorem_main(id: u8, q: u32, candidates: usize, points: usize, limit: Duration) -> Check {
    let (report, elapsed) = single_threaded(|| verify::verify_theorem_main(q));
    let r: TheoremMainReport = match report {
        Ok(r) => r,
        Err(e) => return check(id, "rank-4 candidates in PG(2,q^4)", false, format!("error: {e}")),
    };
    let sizes_ok = r.rank4_candidates == candidates && r.points == points;
    let in_time = elapsed < limit;
    let pass = r.conclusion && sizes_ok && in_time;
    let recorded = sizes_ok
        && in_time
        && r.rank4_all_unsaturated
        && r.example_saturating
        && r.e3_uncovered_count == 1
        && r.firstform_result.e3_uncovered
        && r.secondform_results.iter().all(|c| !c.result.e3_uncovered);
    let detail = format!(
        "q={q}: {} candidates, {} non-saturating, (0,0,1) uncovered in {}, example covers {}/{}, {:.2?} on one thread",
        r.rank4_candidates,
        1 + r.secondform_results.len()
            - std::iter::once(&r.firstform_result)
                .chain(r.secondform_results.iter().map(|c| &c.result))
                .filter(|c| c.certificate.saturated)
                .count(),
        r.e3_uncovered_count,
        r.example_result.covered_count,
        r.points,
        elapsed
    );
    Check {
        id,
        title: "rank-4 candidates in PG(2,q^4)",
        pass,
        detail,
        known_failure: Some(recorded),
    }
}

fn ac3() -> Check {
    let runs = [(2, 1000, 31), (3, 200, 32)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (q, trials, seed) in runs {
        match verify::random_rank4_never_saturating(q, trials, seed) {
            Ok(r) => {
                pass &= r.saturating == 0 && r.trials == trials;
                parts.push(format!("q={q}: {}/{trials} saturating", r.saturating));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("q={q}: error {e}"));
            }
        }
    }
    check(3, "random rank-4 scan", pass, parts.join(", "))
}

fn ac4() -> Check {
    let mut pass = true;
    let mut checked = 0;
    let mut failures = 0;
    for q in [2, 3] {
        for k in [2, 3] {
            match verify::identities_scan(q, k, 500, 40 + q as u64 * 10 + k as u64) {
                Ok(r) => {
                    pass &= r.failures == 0 && r.ranks == (1..=6).collect::<Vec<_>>();
                    checked += r.checked;
                    failures += r.failures;
                }
                Err(_) => pass = false,
            }
        }
    }
    check(
        4,
        "linear-set identities",
        pass,
        format!("{checked} subspaces (500 per rank 1..6 for each (q,k)), {failures} failures"),
    )
}

fn ac5() -> Check {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [2, 3] {
        for n in [2, 3, 4] {
            match verify::size_bound_scan(q, n, 500, 50 + n as u64) {
                Ok(r) => {
                    pass &= r.failures == 0 && r.checked == 500;
                    parts.push(format!("q={q} n={n}: min {} >= {}", r.min_size, r.bound));
                }
                Err(e) => {
                    pass = false;
                    parts.push(format!("q={q} n={n}: error {e}"));
                }
            }
        }
    }
    check(5, "size bound on PG(1,q^4)", pass, parts.join(", "))
}

fn ac6() -> Check {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [2, 3] {
        match verify::extension_scan(q, 200, 60 + q as u64) {
            Ok(r) => {
                pass &= r.weight_one_failures == 0 && r.size_failures == 0;
                parts.push(format!(
                    "q={q}: 200 pairs, {} size / {} weight failures",
                    r.size_failures, r.weight_one_failures
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("q={q}: error {e}"));
            }
        }
    }
    check(6, "extension by a vector outside <U>", pass, parts.join(", "))
}

fn ac7() -> Check {
    let start = Instant::now();
    let mut pass = true;
    let mut codes = 0;
    for q in [2, 3] {
        let t = Tower::for_q(q, 4).unwrap();
        for n in 2..=4 {
            let v: Vec<Elem> = t.fq_basis().into_iter().take(n).collect();
            for k in 1..=n {
                let code = gabidulin(&t, &v, k, 1, false).unwrap().code;
                let d = code.min_distance(&t).unwrap();
                pass &= d == n - k + 1 && code.is_mrd(&t).unwrap();
                codes += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(30);
    check(
        7,
        "Gabidulin codes are MRD",
        pass,
        format!("{codes} codes, d = n-k+1 for all, {elapsed:.2?}"),
    )
}

fn ac8() -> Check {
    let t = Tower::for_q(2, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(80);
    let mut pass = true;
    let mut codes = 0;
    let mut words = 0;
    while codes < 200 {
        let k = rng.gen_range(2..=3);
        let n = rng.gen_range(k..=5);
        let g: Vec<Vec<Elem>> = (0..k)
            .map(|_| (0..n).map(|_| Elem(rng.gen_range(0..t.qm()))).collect())
            .collect();
        let Ok(code) = RankMetricCode::new(&t, g) else { continue };
        if code.is_degenerate() {
            continue;
        }
        codes += 1;
        let space = ProjectiveSpace::new(&t, k).unwrap();
        for x in space.points() {
            let direct = rank_weight(&t, &code.encode(&t, x.coords()));
            pass &= direct == code.codeword_weight_geometric(&t, x.coords()).unwrap();
            words += 1;
        }
        pass &= code.min_distance(&t).unwrap() == code.min_distance_geometric(&t).unwrap();
    }
    check(
        8,
        "codes and systems",
        pass,
        format!("{codes} non-degenerate codes, {words} projective codewords compared"),
    )
}

/// Direct pair scan: `f` is scattered iff `f(x)/x = f(y)/y` forces `y/x ∈ F_q`.
fn scattered_by_pairs(t: &Tower, f: &LinearizedPoly) -> bool {
    let fqm = t.fqm();
    let nonzero: Vec<Elem> = fqm.elements().skip(1).collect();
    let ratio: Vec<Elem> = nonzero.iter().map(|&x| fqm.div(f.eval(t, x), x).unwrap()).collect();
    for i in 0..nonzero.len() {
        for j in i + 1..nonzero.len() {
            if ratio[i] == ratio[j] && !t.is_in_fq(fqm.div(nonzero[j], nonzero[i]).unwrap()) {
                return false;
            }
        }
    }
    true
}

fn ac9() -> Check {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [2, 3] {
        let t = Tower::for_q(q, 4).unwrap();
        for (i, expected) in [(1, true), (2, false), (0, false)] {
            let f = LinearizedPoly::monomial(&t, i).unwrap();
            let pairs = scattered_by_pairs(&t, &f);
            pass &= pairs == expected && f.is_scattered(&t) == expected;
            parts.push(format!(
                "q={q} x^(q^{i}) {}",
                if pairs { "scattered" } else { "not scattered" }
            ));
        }
    }
    check(9, "scattered polynomials", pass, parts.join(", "))
}

fn ac10() -> Check {
    let census = verify::rank5_size_census(2, 500, 100).unwrap();
    let t = Tower::for_q(2, 4).unwrap();
    let space = ProjectiveSpace::new(&t, 3).unwrap();
    let line = LinearSet::new(&space, &verify::line_rank5_subspace(&t).unwrap()).unwrap();
    let line_sat = line.saturation(&space, 2).unwrap().saturated;
    let pass = census.sizes_ok && census.coverage_ok && line.size() == 17 && !line_sat;
    check(
        10,
        "rank-5 census",
        pass,
        format!(
            "sizes {:?}, {} lines among samples, {} coverage mismatches; constructed line size {} saturating={}",
            census.histogram,
            census.lines,
            census.coverage_mismatches,
            line.size(),
            line_sat
        ),
    )
}

fn ac11() -> Check {
    let rows = verify::bound_table().unwrap();
    let got: Vec<i64> = rows.iter().map(|r| r.lower_bound).collect();
    check(
        11,
        "bound table",
        got == [4, 3, 9],
        format!("got {got:?}, expected [4, 3, 9]"),
    )
}

fn main() {
    // Sampled subspaces come from the same generator the library uses; make
    // sure it is wired to ChaCha with the given seed.
    let t = Tower::for_q(2, 4).unwrap();
    let a = random_subspace_with(&t, 4, 3, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    let b = random_subspace_with(&t, 4, 3, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    assert_eq!(a, b);

    let checks: Vec<fn() -> Check> = vec![
        || theorem_main(1, 2, 226, 273, Duration::from_secs(10)),
        || theorem_main(2, 3, 1601, 6643, Duration::from_secs(300)),
        ac3,
        ac4,
        ac5,
        ac6,
        ac7,
        ac8,
        ac9,
        ac10,
        ac11,
    ];
    let mut unexpected = 0;
    for run in checks {
        let c = run();
        let status = if c.pass { "PASS" } else { "FAIL" };
        let note = match c.known_failure {
            Some(true) if !c.pass => " (known failure, matches the recorded analysis)",
            Some(false) if !c.pass => " (known failure, but NOT in the recorded way)",
            Some(_) => " (listed as a known failure but passed)",
            None => "",
        };
        println!("[{status}] AC{} {}: {}{note}", c.id, c.title, c.detail);
        let ok = match c.known_failure {
            Some(matches) => !c.pass && matches,
            None => c.pass,
        };
        unexpected += usize::from(!ok);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria deviate from the expected outcome");
        std::process::exit(1);
    }
}
