//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with its elapsed time. Oracles here are written independently of
//! the library search paths they check.

use gact_core::acts::{closure, EndoMap};
use gact_core::carrier::{Carrier, CayleyTable};
use gact_core::catalog::{build_scenario, verify_coordinate_identity, ScenarioParams};
use gact_core::filtertop::{
    filter_pseudocharacter, is_open, neighborhood_chain, orbit, separate, t1_witness, tail_filter,
    OpennessVerdict,
};
use gact_core::sets::KSet;
use gact_core::special::{build_special, SpecialSequence};
use gact_core::zariski::{build_subbase, PsiValue, Subbase, Tag, DEFAULT_RAW_SET_BUDGET};
use gact_core::{CarrierRef, MonoidClosure, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

struct Criterion {
    name: &'static str,
    budget: Duration,
    start: Instant,
}

impl Criterion {
    fn start(name: &'static str, budget_secs: u64) -> Self {
        Criterion {
            name,
            budget: Duration::from_secs(budget_secs),
            start: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.start.elapsed();
        let ok = elapsed <= self.budget;
        println!(
            "criterion {}: {} ({elapsed:.2?}, budget {:?})",
            self.name,
            if ok { "PASS" } else { "FAIL (over budget)" },
            self.budget
        );
        assert!(ok, "criterion {} exceeded its time budget", self.name);
    }
}

/// 1: adjacent transpositions; every probed point carries a two-member
/// certificate, no single subbasic set isolates, and the exact
/// pseudocharacter is two.
#[test]
fn criterion_1_finitary_permutations() {
    let timer = Criterion::start("1 (finitary permutations)", 10);
    let scenario = build_scenario("finitary-perms", &ScenarioParams::default()).unwrap();
    let subbase = scenario.subbase().unwrap();
    for &x in &scenario.probe {
        let cert = subbase
            .isolation(x)
            .unwrap()
            .unwrap_or_else(|| panic!("{x} must be isolated"));
        assert_eq!(cert.members.len(), 2, "certificate size at {x}");
        assert!(cert.verify(&subbase).unwrap());
        // exhaustive search over one-element subfamilies
        for s in subbase.sets() {
            assert_ne!(s.set.is_singleton(), Some(x), "one-set certificate at {x}");
        }
        let psi = subbase.pseudocharacter(x).unwrap();
        assert_eq!(psi.value, PsiValue::Exact(2), "psi at {x}");
        assert!(psi.certificate.unwrap().verify(&subbase).unwrap());
    }
    timer.finish();
}

/// 2: max-shift monoid on the naturals; each probed point `n` is cut out
/// by the shift difference below `n + 1` and the `n` smaller constants.
#[test]
fn criterion_2_nat_max_shifts() {
    let timer = Criterion::start("2 (max-shift singletons)", 5);
    let scenario = build_scenario("nat-max", &ScenarioParams::default()).unwrap();
    let subbase = scenario.subbase().unwrap();
    let report = subbase.discreteness_report(&scenario.probe).unwrap();
    assert_eq!(report.summary, gact_core::zariski::Summary::DiscreteOnProbe);
    for &n in &scenario.probe {
        let cert = subbase.isolation(n).unwrap().expect("isolated");
        assert_eq!(
            cert.members.len(),
            n as usize + 1,
            "certificate size at {n}"
        );
        let mut expected = vec![Tag::Diff {
            f: 0,
            g: n as usize + 1,
        }];
        expected.extend((0..n).map(|k| Tag::DiffConst { f: 0, c: k }));
        assert_eq!(cert.members, expected, "certificate tags at {n}");
        assert!(cert.verify(&subbase).unwrap());
    }
    timer.finish();
}

/// 3: integer translations; nonempty subbasic sets are all cofinite, no
/// probe point is isolated, pseudocharacter reports infinite.
#[test]
fn criterion_3_integer_shifts() {
    let timer = Criterion::start("3 (integer shifts)", 5);
    let scenario = build_scenario("int-shifts", &ScenarioParams::default()).unwrap();
    let subbase = scenario.subbase().unwrap();
    for s in subbase.sets() {
        assert!(
            s.set.is_empty() || !s.set.is_finite(),
            "finite nonempty subbasic set {:?}",
            s.tag
        );
    }
    for &x in &scenario.probe {
        assert!(subbase.isolation(x).unwrap().is_none(), "{x} isolated");
        assert_eq!(
            subbase.pseudocharacter(x).unwrap().value,
            PsiValue::Infinite,
            "psi at {x}"
        );
    }
    let report = subbase.discreteness_report(&scenario.probe).unwrap();
    assert!(matches!(
        report.summary,
        gact_core::zariski::Summary::NonDiscreteWitness { .. }
    ));
    timer.finish();
}

/// 4: powers of the six-element symmetric group; the coordinate-preimage
/// identity holds for every (coordinate, element) pair, and every
/// coordinate preimage belongs to the generated topology.
#[test]
fn criterion_4_group_power() {
    let timer = Criterion::start("4 (group power)", 60);
    let group = CayleyTable::symmetric_3();
    for exponent in [1u32, 2] {
        for coordinate in 0..exponent {
            for element in 0..6 {
                assert!(
                    verify_coordinate_identity(&group, exponent, coordinate, element).unwrap(),
                    "identity fails at exponent {exponent}, ({coordinate}, {element})"
                );
            }
        }
        let scenario = build_scenario(
            "group-power",
            &ScenarioParams {
                exponent: Some(exponent),
                ..Default::default()
            },
        )
        .unwrap();
        let subbase = scenario.subbase().unwrap();
        let size = scenario.carrier.size().unwrap() as Point;
        for coordinate in 0..exponent {
            for element in 0..6 {
                let points: Vec<Point> = (0..size)
                    .filter(|&x| {
                        scenario.carrier.power_coordinate(x, coordinate).unwrap() == element
                    })
                    .collect();
                let preimage = KSet::finite(&scenario.carrier, points).unwrap();
                assert!(
                    subbase.generated_contains(&preimage).unwrap(),
                    "preimage ({coordinate}, {element}) not open at exponent {exponent}"
                );
            }
        }
        if exponent == 1 {
            // small enough to enumerate the whole topology: discrete
            let topology = subbase.generate_topology(1 << 16).unwrap();
            assert_eq!(topology.len(), 64);
            for element in 0..6 {
                let preimage = KSet::singleton(&scenario.carrier, element).unwrap();
                assert!(topology.contains(&preimage));
            }
        }
    }
    timer.finish();
}

fn shift_scenario() -> (MonoidClosure, SpecialSequence) {
    let z = Carrier::int_line(-64, 64).unwrap();
    let cl = closure(&z, &[EndoMap::affine(&z, 1, 1).unwrap()], 19, 20).unwrap();
    let seq = build_special(&cl, 0, 24, (0, 4096)).unwrap();
    (cl, seq)
}

fn doubling_scenario() -> (MonoidClosure, SpecialSequence) {
    let z = Carrier::int_line(-64, 64).unwrap();
    let cl = closure(&z, &[EndoMap::affine(&z, 2, 0).unwrap()], 4, 8).unwrap();
    let seq = build_special(&cl, 1, 10, (0, 1 << 20)).unwrap();
    (cl, seq)
}

/// 5: the greedy special sequence passes an independent quadruple scan
/// of both defining conditions, written here from scratch.
#[test]
fn criterion_5_special_sequence_soundness() {
    let timer = Criterion::start("5 (special sequence soundness)", 10);
    let (cl, seq) = shift_scenario();
    assert_eq!(cl.len(), 20);
    assert_eq!(seq.len(), 24);
    assert!(seq.is_verified());

    let points = seq.points();
    let mut violations = 0usize;
    for step in 1..points.len() {
        let map_limit = step.min(cl.len());
        for i in 0..map_limit {
            for j in 0..map_limit {
                let fi = cl.element(i);
                let fj = cl.element(j);
                // condition on the base point
                if fi.apply(points[0]).unwrap() != fj.apply(points[0]).unwrap()
                    && fi.apply(points[step]).unwrap() == fj.apply(points[step]).unwrap()
                {
                    violations += 1;
                }
                // condition on earlier values
                for d in 0..step {
                    if fi.apply(points[0]).unwrap() != fj.apply(points[d]).unwrap()
                        && fi.apply(points[step]).unwrap() == fj.apply(points[d]).unwrap()
                    {
                        violations += 1;
                    }
                }
            }
        }
    }
    assert_eq!(violations, 0, "independent quadruple scan found violations");
    timer.finish();
}

fn probe_for(closure: &MonoidClosure, seq: &SpecialSequence) -> Vec<Point> {
    // Exclude points the last sequence element maps onto: the truncation
    // has no tail left to witness those.
    let last = *seq.points().last().unwrap();
    let boundary: Vec<Point> = closure
        .elements()
        .iter()
        .map(|g| g.apply(last).unwrap())
        .collect();
    (0..40).filter(|p| !boundary.contains(p)).collect()
}

fn criterion_6_for(name: &str, cl: &MonoidClosure, seq: &SpecialSequence, off_orbit_seed: Point) {
    let carrier = cl.carrier().clone();
    let fb = tail_filter(seq).unwrap();
    let support = seq.support_set();
    let reach = orbit(&support, cl).unwrap();

    // (a) a cutoff for every closure map and every probed point
    for x in probe_for(cl, seq) {
        let report = t1_witness(x, &fb, cl).unwrap();
        assert_eq!(
            report.witnesses.len() + report.skipped_maps,
            cl.len(),
            "{name}: map unaccounted at {x}"
        );
        for w in &report.witnesses {
            assert!(
                !w.vacuous,
                "{name}: vacuous cutoff at {x}, map {}",
                w.map_index
            );
            let g = cl.element(w.map_index);
            for (idx, &p) in seq.points().iter().enumerate().skip(w.cutoff + 1) {
                assert_ne!(
                    g.apply(p).unwrap(),
                    x,
                    "{name}: cutoff broken at index {idx}"
                );
            }
            if w.cutoff > 0 {
                assert_eq!(
                    g.apply(seq.points()[w.cutoff]).unwrap(),
                    x,
                    "{name}: cutoff not least"
                );
            }
        }
    }

    // (b) five disjoint finite closed pairs separate at all depths <= 6
    let pts = seq.points();
    let mut free = Vec::new();
    let mut p = off_orbit_seed;
    while free.len() < 3 {
        if !reach.contains(p) {
            free.push(p);
        }
        p += 1;
    }
    let pairs: Vec<(Vec<Point>, Vec<Point>)> = vec![
        (vec![pts[0]], vec![pts[1]]),
        (vec![pts[0], pts[2]], vec![pts[3]]),
        (vec![pts[1], pts[3]], vec![pts[2], pts[4]]),
        (vec![free[0]], vec![free[1]]),
        (vec![pts[5]], vec![free[2]]),
    ];
    for (a, b) in pairs {
        let a = KSet::finite(&carrier, a).unwrap();
        let b = KSet::finite(&carrier, b).unwrap();
        let report = separate(&a, &b, &fb, cl, 6).unwrap();
        assert!(
            report.warnings.is_empty(),
            "{name}: seeds not closed: {:?}",
            report.warnings
        );
        assert_eq!(report.a_chain.len(), 7);
        for (la, lb) in report.a_chain.iter().zip(&report.b_chain) {
            assert!(
                la.intersect(lb).unwrap().is_empty(),
                "{name}: chains collide for ({a:?}, {b:?})"
            );
        }
    }

    // (c) chains are monotone; a base family meeting in the base point
    // keeps the depth-4 chain intersection inside the orbit only at it
    for f in fb.base() {
        let chain = neighborhood_chain(f, &fb, cl, 4).unwrap();
        for pair in chain.windows(2) {
            assert!(
                pair[0].is_subset(&pair[1]).unwrap(),
                "{name}: chain not monotone"
            );
        }
    }
    let odd: Vec<Point> = pts
        .iter()
        .enumerate()
        .filter(|(i, _)| *i == 0 || i % 2 == 1)
        .map(|(_, &q)| q)
        .collect();
    let even: Vec<Point> = pts
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .map(|(_, &q)| q)
        .collect();
    let odd = KSet::finite(&carrier, odd).unwrap();
    let even = KSet::finite(&carrier, even).unwrap();
    assert_eq!(
        odd.intersect(&even).unwrap(),
        KSet::singleton(&carrier, seq.base_point()).unwrap()
    );
    let refined = fb.refine(&[odd.clone(), even.clone()]).unwrap();
    let chain_odd = neighborhood_chain(&odd, &refined, cl, 4).unwrap();
    let chain_even = neighborhood_chain(&even, &refined, cl, 4).unwrap();
    let meet = chain_odd
        .last()
        .unwrap()
        .intersect(chain_even.last().unwrap())
        .unwrap();
    assert_eq!(
        meet.intersect(&reach).unwrap(),
        KSet::singleton(&carrier, seq.base_point()).unwrap(),
        "{name}: chain intersection leaks into the orbit"
    );
    let (psi, _) = filter_pseudocharacter(&refined).unwrap();
    assert_eq!(psi, PsiValue::Exact(2), "{name}: refined filter psi");

    // (d) trace equality: tails extend to open sets, and open sets
    // through the base point trace onto supersets of tails
    let off_support = support.complement();
    let mut open_candidates = Vec::new();
    for tail in fb.base() {
        let u = tail.union(&off_support).unwrap();
        assert!(
            is_open(&u, &fb, cl).unwrap().is_open(),
            "{name}: tail extension not open"
        );
        open_candidates.push(u);
    }
    open_candidates.push(KSet::full(&carrier));
    open_candidates.push(
        fb.base()[0]
            .union(&off_support)
            .unwrap()
            .minus(&KSet::singleton(&carrier, free[0]).unwrap())
            .unwrap(),
    );
    for u in open_candidates {
        if !u.contains(seq.base_point()) {
            continue;
        }
        if let OpennessVerdict::Open { .. } = is_open(&u, &fb, cl).unwrap() {
            let trace = u.intersect(&support).unwrap();
            assert!(
                fb.base().iter().any(|b| b.is_subset(&trace).unwrap()),
                "{name}: open set without a tail inside its trace"
            );
        }
    }
}

/// 6: finite-depth filter-topology properties over both verified special
/// sequences in the suite.
#[test]
fn criterion_6_filter_topology_shadows() {
    let timer = Criterion::start("6 (filter topology shadows)", 30);
    let (cl, seq) = shift_scenario();
    criterion_6_for("shifts", &cl, &seq, 1000);
    let (cl, seq) = doubling_scenario();
    criterion_6_for("doubling", &cl, &seq, 1001);
    timer.finish();
}

/// Membership oracle over the window plus a cofinite-tail flag; exact
/// for sets whose exceptional points lie inside the window, and closed
/// under the Boolean operations computed here directly.
#[derive(Clone, PartialEq, Debug)]
struct WindowOracle {
    member: Vec<bool>,
    tail: bool,
}

impl WindowOracle {
    fn of(set: &KSet) -> Self {
        WindowOracle {
            member: (0..128).map(|p| set.contains(p)).collect(),
            tail: !set.is_finite(),
        }
    }
    fn and(&self, other: &Self) -> Self {
        WindowOracle {
            member: self
                .member
                .iter()
                .zip(&other.member)
                .map(|(a, b)| a & b)
                .collect(),
            tail: self.tail && other.tail,
        }
    }
    fn or(&self, other: &Self) -> Self {
        WindowOracle {
            member: self
                .member
                .iter()
                .zip(&other.member)
                .map(|(a, b)| a | b)
                .collect(),
            tail: self.tail || other.tail,
        }
    }
    fn not(&self) -> Self {
        WindowOracle {
            member: self.member.iter().map(|a| !a).collect(),
            tail: !self.tail,
        }
    }
}

fn random_kset(rng: &mut ChaCha8Rng, carrier: &CarrierRef) -> KSet {
    let n = rng.gen_range(0..12);
    let points: Vec<Point> = (0..n).map(|_| rng.gen_range(0..128)).collect();
    if rng.gen_bool(0.5) {
        KSet::cofinite(carrier, points).unwrap()
    } else {
        KSet::finite(carrier, points).unwrap()
    }
}

/// 7: oracle equivalence for the set algebra, the closed-form difference
/// sets, and the pseudocharacter search.
#[test]
fn criterion_7_oracle_equivalence() {
    let timer = Criterion::start("7 (oracle equivalence)", 60);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e7a);

    // (a) 10^4 random set operations against the window oracle
    let line = Carrier::int_line(0, 128).unwrap();
    for _ in 0..10_000 {
        let a = random_kset(&mut rng, &line);
        let b = random_kset(&mut rng, &line);
        let (got, want) = match rng.gen_range(0..4) {
            0 => (
                a.intersect(&b).unwrap(),
                WindowOracle::of(&a).and(&WindowOracle::of(&b)),
            ),
            1 => (
                a.union(&b).unwrap(),
                WindowOracle::of(&a).or(&WindowOracle::of(&b)),
            ),
            2 => (a.complement(), WindowOracle::of(&a).not()),
            _ => (
                a.minus(&b).unwrap(),
                WindowOracle::of(&a).and(&WindowOracle::of(&b).not()),
            ),
        };
        assert_eq!(WindowOracle::of(&got), want, "algebra mismatch");
    }

    // (b) 10^3 closed-form difference sets against pointwise evaluation
    let z = Carrier::int_line(-64, 64).unwrap();
    let n = Carrier::nat_line(0, 64).unwrap();
    let fin = Carrier::finite_set(10).unwrap();
    for case in 0..1_000 {
        let (f, g): (EndoMap, EndoMap) = match case % 4 {
            0 => (
                EndoMap::affine(&z, rng.gen_range(-5..6), rng.gen_range(-20..21)).unwrap(),
                EndoMap::affine(&z, rng.gen_range(-5..6), rng.gen_range(-20..21)).unwrap(),
            ),
            1 => (
                EndoMap::max_shift(&n, rng.gen_range(0..20)).unwrap(),
                EndoMap::max_shift(&n, rng.gen_range(0..20)).unwrap(),
            ),
            2 => (random_perm(&mut rng, &n), random_perm(&mut rng, &n)),
            _ => (
                EndoMap::table(&fin, (0..10).map(|_| rng.gen_range(0..10)).collect()).unwrap(),
                EndoMap::table(&fin, (0..10).map(|_| rng.gen_range(0..10)).collect()).unwrap(),
            ),
        };
        let diff = f.diff(&g).unwrap();
        let (lo, hi) = f.carrier().window();
        for x in lo..hi {
            assert_eq!(
                diff.contains(x),
                f.apply(x).unwrap() != g.apply(x).unwrap(),
                "diff mismatch at {x}"
            );
        }
    }

    // (c) pseudocharacter search against exhaustive enumeration on 50
    // random small instances
    let mut instances = 0;
    while instances < 50 {
        let size = rng.gen_range(6..12);
        let carrier = Carrier::finite_set(size).unwrap();
        let gens: Vec<EndoMap> = (0..2)
            .map(|_| {
                EndoMap::table(
                    &carrier,
                    (0..size).map(|_| rng.gen_range(0..size as Point)).collect(),
                )
                .unwrap()
            })
            .collect();
        let cl = closure(&carrier, &gens, 2, 8).unwrap();
        let window: Vec<Point> = (0..rng.gen_range(2..5))
            .map(|_| rng.gen_range(0..size as Point))
            .collect();
        let Ok(subbase) = build_subbase(&cl, &window, DEFAULT_RAW_SET_BUDGET) else {
            continue;
        };
        if subbase.len() > 20 {
            continue;
        }
        let x = rng.gen_range(0..size as Point);
        let got = subbase.pseudocharacter(x).unwrap();
        let want = exhaustive_psi(&subbase, x);
        assert_eq!(got.value, PsiValue::Exact(want), "psi mismatch at {x}");
        if let Some(cert) = got.certificate {
            assert!(cert.verify(&subbase).unwrap());
        }
        instances += 1;
    }

    timer.finish();
}

fn random_perm(rng: &mut ChaCha8Rng, carrier: &CarrierRef) -> EndoMap {
    let mut domain: Vec<Point> = (0..12).collect();
    // Fisher-Yates over a prefix
    for i in (1..domain.len()).rev() {
        let j = rng.gen_range(0..=i);
        domain.swap(i, j);
    }
    let keep = rng.gen_range(0..domain.len());
    let cycle = &domain[..keep];
    let mut pairs = Vec::new();
    if cycle.len() >= 2 {
        for (i, &p) in cycle.iter().enumerate() {
            pairs.push((p, cycle[(i + 1) % cycle.len()]));
        }
    }
    EndoMap::fin_supp_perm(carrier, pairs).unwrap()
}

/// Plain subset enumeration over bitmasks; no pruning beyond the running
/// minimum, no shared code with the search it checks.
fn exhaustive_psi(subbase: &Subbase, x: Point) -> usize {
    let members: Vec<&KSet> = subbase
        .sets()
        .iter()
        .filter(|s| s.set.contains(x))
        .map(|s| &s.set)
        .collect();
    let full = KSet::full(subbase.closure().carrier());
    let mut target = full.clone();
    for m in &members {
        target = target.intersect(m).unwrap();
    }
    if members.is_empty() || target.is_full() {
        return 1;
    }
    let m = members.len();
    assert!(m <= 20, "oracle is sized for small subbases");
    let mut best = m;
    for mask in 1u32..(1u32 << m) {
        let count = mask.count_ones() as usize;
        if count >= best {
            continue;
        }
        let mut acc = full.clone();
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc = acc.intersect(members[i]).unwrap();
            bits &= bits - 1;
        }
        if acc == target {
            best = count;
        }
    }
    best
}
