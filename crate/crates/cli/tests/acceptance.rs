//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fuzzylie::groups::{
    catalog, cyclic, is_fuzzy_subgroup, is_g_invariant, level_subgroup_oracle, quotient_action, restrict_to_subgroup,
    symmetric, verify_action, EquivalenceRelation, FiniteAction, FiniteGroup,
};
use fuzzylie::lie::{z_axis_fixture, format_vector, is_fuzzy_lie_ideal, is_fuzzy_lie_subalgebra, LieCondition};
use fuzzylie::manifold::{
    check_atlas, gl_demo, phi_atlas, psi_atlas, transition_map, Tolerances, DEFAULT_CIRCLE_SAMPLES,
};
use fuzzylie::maps::{image, preimage, ProperFunction};
use fuzzylie::sets::is_subset;
use fuzzylie::topology::{check_map, continuity, generate, verify_axioms, FuzzyTopology, GradeLattice, DEFAULT_CAP};
use fuzzylie::{Carrier, FuzzySet, Grade, Verdict};
use fuzzylie_cli::{run, Invocation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: impl Into<String>) -> Outcome {
    Outcome { passed, summary: summary.into() }
}

fn machine(args: &[&str]) -> Invocation {
    let mut full = vec!["fuzzylie"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "machine"]);
    run(full)
}

fn key<'a>(out: &'a Invocation, k: &str) -> Option<&'a str> {
    out.stdout.lines().find_map(|l| l.strip_prefix(k).and_then(|r| r.strip_prefix('=')))
}

fn float_key(out: &Invocation, k: &str) -> f64 {
    key(out, k).and_then(|v| v.parse().ok()).unwrap_or(f64::NAN)
}

fn g(s: &str) -> Grade {
    s.parse().expect("valid grade")
}

fn lattice_grade(rng: &mut ChaCha8Rng, q: u64, at_most: Grade) -> Grade {
    let top = (0..=q).rev().find(|&k| Grade::new(k, q).unwrap() <= at_most).unwrap_or(0);
    Grade::new(rng.random_range(0..=top), q).unwrap()
}

fn random_set_below(rng: &mut ChaCha8Rng, bound: &FuzzySet, q: u64) -> FuzzySet {
    let grades = bound.grades().iter().map(|&b| lattice_grade(rng, q, b)).collect();
    FuzzySet::new(bound.carrier().clone(), grades).unwrap()
}

fn random_space(rng: &mut ChaCha8Rng, tag: &str, q: u64) -> FuzzySet {
    let n = rng.random_range(1..=4);
    let carrier = Arc::new(Carrier::new((0..n).map(|i| format!("{tag}{i}"))).unwrap());
    random_set_below(rng, &FuzzySet::ones(carrier), q)
}

fn random_topology(rng: &mut ChaCha8Rng, ambient: &FuzzySet, lattice: GradeLattice, extra: Vec<FuzzySet>) -> Result<FuzzyTopology, fuzzylie::Error> {
    let mut gens = extra;
    for _ in 0..rng.random_range(0..=3) {
        gens.push(random_set_below(rng, ambient, lattice.resolution()));
    }
    generate(ambient, &gens, lattice, DEFAULT_CAP)
}

/// Cross-product algebra: subalgebra holds, ideal fails at the documented pair.
fn criterion_1() -> Outcome {
    let out = machine(&["demo-example-2-14"]);
    let cli_ok = out.code == 1
        && key(&out, "SUBALGEBRA_VERDICT") == Some("pass")
        && key(&out, "IDEAL_VERDICT") == Some("fail")
        && key(&out, "IDEAL_WITNESS") == Some("(0,0,1),(1,1,1)")
        && key(&out, "IDEAL_WITNESS_LHS") == Some("0")
        && key(&out, "IDEAL_WITNESS_RHS") == Some("1/4");
    let (sc, mu, samples) = z_axis_fixture();
    let sub = is_fuzzy_lie_subalgebra(&mu, &sc, &samples).unwrap();
    let ideal = is_fuzzy_lie_ideal(&mu, &sc, &samples).unwrap();
    let exact = match ideal.witness() {
        Some(w) => {
            w.condition == LieCondition::Bracket
                && format_vector(&w.x) == "(0,0,1)"
                && w.other.to_string() == "(1,1,1)"
                && w.lhs == Grade::ZERO
                && w.rhs == g("1/4")
        }
        None => false,
    };
    outcome(
        cli_ok && sub.holds() && exact,
        format!("subalgebra over {} sampled vectors, ideal witness x=(0,0,1) y=(1,1,1) value 0 < 1/4", samples.vectors().len()),
    )
}

/// Transition values on the circle atlases and C1 checks of every pair.
fn criterion_2() -> Outcome {
    let phi = phi_atlas(DEFAULT_CIRCLE_SAMPLES);
    let psi = psi_atlas(DEFAULT_CIRCLE_SAMPLES);
    let max_error = |atlas, j, l, expected: &dyn Fn(f64) -> f64| {
        let t = transition_map(atlas, j, l).unwrap();
        t.grid
            .iter()
            .map(|x| t.eval(x).map_or(f64::INFINITY, |y| (y[0] - expected(x[0])).abs()))
            .fold(0.0, f64::max)
    };
    let phi_error = max_error(&phi, 0, 1, &|t| if t < 0.5 { t } else { t - 1.0 });
    let psi_error = max_error(&psi, 0, 1, &|t| (1.0 - t * t).sqrt());
    let pairs_pass = [&phi, &psi].iter().all(|a| check_atlas(a, None).unwrap().transitions_pass());
    let out = machine(&["demo-circle", "--normalize-cover"]);
    let derivative = float_key(&out, "PHI_DERIVATIVE_ERROR").max(float_key(&out, "PSI_DERIVATIVE_ERROR"));
    outcome(
        phi_error <= 1e-9 && psi_error <= 1e-9 && pairs_pass && out.code == 0 && derivative < 1e-4,
        format!(
            "phi error {phi_error:.1e}, psi error {psi_error:.1e}, derivative error {derivative:.1e}, all intra-atlas pairs C1"
        ),
    )
}

/// Cover deficiencies as literally defined, and zero after normalization.
fn criterion_3() -> Outcome {
    let raw = machine(&["demo-circle"]);
    let normalized = machine(&["demo-circle", "--normalize-cover"]);
    let phi = float_key(&raw, "PHI_COVER_DEFICIENCY");
    let psi = float_key(&raw, "PSI_COVER_DEFICIENCY");
    // Sample 0 is the point where the angle chart has its seam.
    let at_seam = key(&raw, "PHI_COVER_WORST_SAMPLE") == Some("0");
    let after = float_key(&normalized, "PHI_COVER_DEFICIENCY").max(float_key(&normalized, "PSI_COVER_DEFICIENCY"));
    outcome(
        phi == 0.5 && psi == 0.75 && at_seam && after == 0.0 && raw.code == 1,
        format!("phi deficiency {phi} at the seam sample, psi deficiency {psi}, normalized {after}"),
    )
}

/// The subgroup generated by `gens`.
fn generated(group: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut members: BTreeSet<usize> = BTreeSet::from([group.identity()]);
    members.extend(gens);
    loop {
        let next: BTreeSet<usize> = members.iter().flat_map(|&a| members.iter().map(move |&b| (a, b))).map(|(a, b)| group.op(a, b)).collect();
        let grown: BTreeSet<usize> = members.union(&next).copied().collect();
        if grown.len() == members.len() {
            return members;
        }
        members = grown;
    }
}

/// Half the sets are uniform random; half are built from a random chain of
/// subgroups so that both verdicts occur often.
fn random_mu(rng: &mut ChaCha8Rng, group: &FiniteGroup) -> FuzzySet {
    let n = group.order();
    let grades: Vec<Grade> = if rng.random_bool(0.5) {
        (0..n).map(|_| Grade::new(rng.random_range(0..=8), 8).unwrap()).collect()
    } else {
        let mut levels: Vec<u64> = (0..4).map(|_| rng.random_range(0..=8)).collect();
        levels.sort_unstable_by(|a, b| b.cmp(a));
        // Grade of x: the level of the first subgroup in the chain holding it.
        let mut gens = Vec::new();
        let mut grade = vec![Grade::new(levels[3], 8).unwrap(); n];
        for &level in &levels {
            for x in generated(group, &gens) {
                grade[x] = grade[x].max(Grade::new(level, 8).unwrap());
            }
            gens.push(rng.random_range(0..n));
        }
        grade
    };
    FuzzySet::new(group.carrier().clone(), grades).unwrap()
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut agree, mut total, mut holds) = (0, 0, 0);
    for (_, group) in catalog() {
        for _ in 0..1000 {
            let mu = random_mu(&mut rng, &group);
            let direct = is_fuzzy_subgroup(&mu, &group).unwrap().holds();
            let oracle = level_subgroup_oracle(&mu, &group).unwrap();
            total += 1;
            agree += usize::from(direct == oracle);
            holds += usize::from(direct);
        }
    }
    outcome(agree == total, format!("{agree}/{total} agree ({holds} fuzzy subgroups)"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut good, mut largest) = (0, 0);
    for _ in 0..200 {
        let lattice = GradeLattice::new(rng.random_range(1..=4)).unwrap();
        let ambient = random_space(&mut rng, "x", lattice.resolution());
        let Ok(tau) = random_topology(&mut rng, &ambient, lattice, Vec::new()) else { continue };
        let again = generate(&ambient, &tau.opens().collect::<Vec<_>>(), lattice, DEFAULT_CAP);
        largest = largest.max(tau.len());
        good += usize::from(verify_axioms(&tau).holds() && again.as_ref() == Ok(&tau) && tau.len() <= DEFAULT_CAP);
    }
    outcome(good == 200, format!("{good}/200 closures satisfy the axioms and are idempotent; largest {largest} opens"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut identity_ok = 0;
    for _ in 0..100 {
        let lattice = GradeLattice::new(rng.random_range(1..=4)).unwrap();
        let ambient = random_space(&mut rng, "x", lattice.resolution());
        let tau = random_topology(&mut rng, &ambient, lattice, Vec::new()).unwrap();
        let id = ProperFunction::new(ambient.clone(), ambient.clone(), (0..ambient.len()).collect()).unwrap();
        let flags = check_map(&id, &tau, &tau).unwrap();
        identity_ok += usize::from(flags.continuous.holds() && flags.open.holds() && flags.homeomorphism());
    }
    let mut composed_ok = 0;
    for _ in 0..100 {
        let lattice = GradeLattice::new(rng.random_range(1..=4)).unwrap();
        let q = lattice.resolution();
        let mu_z = random_space(&mut rng, "z", q);
        let random_map = |rng: &mut ChaCha8Rng, n: usize, m: usize| -> Vec<usize> { (0..n).map(|_| rng.random_range(0..m)).collect() };
        // Ambients sit below the image grades so both maps are proper.
        let below = |rng: &mut ChaCha8Rng, tag: &str, target: &FuzzySet, map: &[usize]| {
            let carrier = Arc::new(Carrier::new((0..map.len()).map(|i| format!("{tag}{i}"))).unwrap());
            let grades = map.iter().map(|&y| lattice_grade(rng, q, target.at(y))).collect();
            FuzzySet::new(carrier, grades).unwrap()
        };
        let ny = rng.random_range(1..=4);
        let g_map = random_map(&mut rng, ny, mu_z.len());
        let mu_y = below(&mut rng, "y", &mu_z, &g_map);
        let nx = rng.random_range(1..=4);
        let f_map = random_map(&mut rng, nx, ny);
        let mu_x = below(&mut rng, "x", &mu_y, &f_map);
        let g_fn = ProperFunction::new(mu_y.clone(), mu_z.clone(), g_map).unwrap();
        let f_fn = ProperFunction::new(mu_x.clone(), mu_y.clone(), f_map).unwrap();
        // Topologies containing all preimages make each map continuous.
        let tau_z = random_topology(&mut rng, &mu_z, lattice, Vec::new()).unwrap();
        let pulled: Vec<FuzzySet> = tau_z.opens().map(|u| preimage(&g_fn, &u).unwrap()).collect();
        let tau_y = random_topology(&mut rng, &mu_y, lattice, pulled).unwrap();
        let pulled: Vec<FuzzySet> = tau_y.opens().map(|u| preimage(&f_fn, &u).unwrap()).collect();
        let tau_x = random_topology(&mut rng, &mu_x, lattice, pulled).unwrap();
        let parts = continuity(&g_fn, &tau_y, &tau_z).unwrap().holds() && continuity(&f_fn, &tau_x, &tau_y).unwrap().holds();
        let composite = f_fn.then(&g_fn).unwrap();
        composed_ok += usize::from(parts && continuity(&composite, &tau_x, &tau_z).unwrap().holds());
    }
    outcome(
        identity_ok == 100 && composed_ok == 100,
        format!("identity homeomorphic in {identity_ok}/100, composites continuous in {composed_ok}/100"),
    )
}

fn s3_on_three() -> FiniteAction {
    let s3 = symmetric(3);
    let space = Arc::new(Carrier::new(["1", "2", "3"]).unwrap());
    let perms: Vec<Vec<usize>> = (0..6).map(|i| s3.label(i).bytes().map(|b| (b - b'1') as usize).collect()).collect();
    FiniteAction::from_fn(s3, FuzzySet::ones(space), |g, x| perms[g][x]).unwrap()
}

/// Disjoint union of up to three blocks, each a relabelled translation
/// action, the conjugation action or a trivial action.
fn random_action(rng: &mut ChaCha8Rng) -> FiniteAction {
    let groups = catalog();
    let group = groups[rng.random_range(0..groups.len())].1.clone();
    let n = group.order();
    let mut blocks: Vec<Box<dyn Fn(usize, usize) -> usize>> = Vec::new();
    let mut sizes = Vec::new();
    for _ in 0..rng.random_range(1..=3) {
        match rng.random_range(0..3) {
            0 => {
                let mut pi: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    pi.swap(i, rng.random_range(0..=i));
                }
                let mut inv = vec![0; n];
                for (i, &p) in pi.iter().enumerate() {
                    inv[p] = i;
                }
                let grp = group.clone();
                blocks.push(Box::new(move |g, x| pi[grp.op(g, inv[x])]));
                sizes.push(n);
            }
            1 => {
                let grp = group.clone();
                blocks.push(Box::new(move |g, x| grp.op(grp.op(g, x), grp.inverse(g))));
                sizes.push(n);
            }
            _ => {
                blocks.push(Box::new(|_, x| x));
                sizes.push(rng.random_range(1..=3));
            }
        }
    }
    let total: usize = sizes.iter().sum();
    let carrier = Arc::new(Carrier::numbered(total).unwrap());
    let ambient = FuzzySet::new(carrier, (0..total).map(|_| Grade::new(rng.random_range(0..=8), 8).unwrap()).collect()).unwrap();
    FiniteAction::from_fn(group, ambient, |g, x| {
        let mut offset = 0;
        for (block, &size) in blocks.iter().zip(&sizes) {
            if x < offset + size {
                return offset + block(g, x - offset);
            }
            offset += size;
        }
        unreachable!("x is inside some block")
    })
    .unwrap()
}

fn criterion_7() -> Outcome {
    let s3 = s3_on_three();
    let s3_ok = verify_action(&s3).holds();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut invariant = 0;
    for _ in 0..100 {
        let action = random_action(&mut rng);
        let c = Grade::new(rng.random_range(0..=8), 8).unwrap();
        let s = FuzzySet::constant(action.space().clone(), c);
        invariant += usize::from(verify_action(&action).holds() && is_g_invariant(&action, &s).unwrap().holds());
    }
    let z4 = FiniteAction::translation(&cyclic(4));
    let mod2 = EquivalenceRelation::new(z4.space().clone(), vec![vec![0, 2], vec![1, 3]]).unwrap();
    let quotient_ok = quotient_action(&z4, &mod2).is_ok_and(|q| verify_action(&q).holds());
    let a3: Vec<usize> = ["123", "231", "312"].iter().map(|l| s3.group().carrier().require(l).unwrap()).collect();
    let restrict_ok = restrict_to_subgroup(&s3, &a3).is_ok_and(|r| verify_action(&r).holds());
    outcome(
        s3_ok && invariant == 100 && quotient_ok && restrict_ok,
        format!("S3 action {s3_ok}, constants invariant {invariant}/100, Z4 mod 2 quotient {quotient_ok}, A3 restriction {restrict_ok}"),
    )
}

/// Every tuple over `values` of length `n`.
fn tuples(values: &[Grade], n: usize) -> Vec<Vec<Grade>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|t| values.iter().map(move |&v| [t.clone(), vec![v]].concat())).collect()
    })
}

fn criterion_8() -> Outcome {
    let values: Vec<Grade> = ["0", "1/4", "1/2", "3/4", "1"].iter().map(|s| g(s)).collect();
    let (mut checked, mut held) = (0u64, 0u64);
    for nx in 1..=4 {
        let x = Arc::new(Carrier::numbered(nx).unwrap());
        let sets = tuples(&values, nx);
        for ny in 1..=4 {
            let y = Arc::new(Carrier::numbered(ny).unwrap());
            let maps = (0..ny.pow(nx as u32)).map(|code| (0..nx).map(|i| (code / ny.pow(i as u32)) % ny).collect::<Vec<_>>());
            for map in maps {
                let f = ProperFunction::new(FuzzySet::ones(x.clone()), FuzzySet::ones(y.clone()), map.clone()).unwrap();
                for grades in &sets {
                    let a = FuzzySet::new(x.clone(), grades.clone()).unwrap();
                    // The tightest source ambient, a itself, caps the preimage.
                    let tight = ProperFunction::new(a.clone(), FuzzySet::ones(y.clone()), map.clone()).unwrap();
                    for h in [&f, &tight] {
                        let back = preimage(h, &image(h, &a).unwrap()).unwrap();
                        checked += 1;
                        held += u64::from(matches!(is_subset(&a, &back), Ok(Verdict::Holds)));
                    }
                }
            }
        }
    }
    outcome(checked == held, format!("A <= preimage(image(A)) in {held}/{checked} enumerated cases"))
}

fn criterion_9() -> Outcome {
    let tol = Tolerances::default();
    let errors: Vec<f64> = (1..=3).map(|n| gl_demo(n, 50, 9, &tol).map_or(f64::INFINITY, |r| r.det_gradient_error)).collect();
    outcome(
        errors.iter().all(|&e| e < 1e-4),
        format!("det gradient relative error n=1: {:.1e}, n=2: {:.1e}, n=3: {:.1e}", errors[0], errors[1], errors[2]),
    )
}

type Criterion = (fn() -> Outcome, Duration, &'static str);

fn main() {
    let criteria: [Criterion; 9] = [
        (criterion_1, Duration::from_secs(5), "Lie subalgebra vs ideal reproduction"),
        (criterion_2, Duration::from_secs(10), "circle transitions and C1 checks"),
        (criterion_3, Duration::from_secs(60), "cover diagnostics"),
        (criterion_4, Duration::from_secs(60), "level-set oracle equivalence"),
        (criterion_5, Duration::from_secs(60), "topology closure soundness"),
        (criterion_6, Duration::from_secs(60), "identity and composite maps"),
        (criterion_7, Duration::from_secs(60), "action suite"),
        (criterion_8, Duration::from_secs(60), "image/preimage Galois property"),
        (criterion_9, Duration::from_secs(60), "GL determinant gradient"),
    ];
    let mut failures = 0;
    for (i, (check, budget, name)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let passed = result.passed && elapsed < *budget;
        failures += usize::from(!passed);
        println!(
            "criterion {}: {} {name}: {} ({:.2}s, budget {}s)",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            result.summary,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
