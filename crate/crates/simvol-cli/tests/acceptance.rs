//! Acceptance suite: one test per headline guarantee of the workbench.
//!
//! Each test prints a single `ACCEPTANCE NN <name>: PASS` line when its
//! checks hold (run with `--nocapture` to see them; cargo's own per-test
//! ok/FAILED lines mirror the verdicts).  Tolerances and budgets are pinned
//! in the code, never read from the environment.  Criteria 01–04 drive the
//! installed binary end to end; the rest exercise the library directly.

use std::cmp::Ordering;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use simvol::bounds::{
    basic_bounds, register_hyperbolic_volume, register_sv, stable_sequence, BoundLedger,
    BoundValue, Kind,
};
use simvol::complex::builtin;
use simvol::homology::ordered::OrderedChain;
use simvol::homology::{duality_rank, efficient_fill, prism_homotopy, Field, HomologyProfile};
use simvol::hyp::{
    c_const, dihedral_angle_regular_ideal, k_overlap, regular_ideal_volume, HypParams,
};
use simvol::pi1::{build_cover, count_by_index, low_index, presentation, transfer_chain};
use simvol::real::Real;
use simvol::simplify::{applicable_moves, apply_move, Move, SearchConfig};
use simvol::DeltaComplex;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_simvol")
}

fn manifold(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../manifolds")
        .join(format!("{stem}.dcx"))
}

/// Runs the binary, asserts success, and returns the parsed report with the
/// wall-clock time the invocation took.
fn run_report(args: &[&str]) -> (Value, Duration) {
    let start = Instant::now();
    let output = Command::new(binary())
        .args(args)
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(
        output.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&output.stderr)
    );
    let report: Value = serde_json::from_slice(&output.stdout).expect("report is JSON");
    (report, elapsed)
}

fn pass(number: u32, name: &str) {
    println!("ACCEPTANCE {number:02} {name}: PASS");
}

/// The ledger-level corpus used by the library-side tests.
fn corpus() -> Vec<DeltaComplex> {
    vec![
        builtin::torus(),
        builtin::genus_surface(2),
        builtin::real_projective_plane(),
        builtin::tetrahedron_boundary(),
        builtin::octahedron(),
        builtin::three_sphere(),
        builtin::three_torus(),
    ]
}

// ---------------------------------------------------------------------------
// 01 — the two-triangle torus certifies an exact integral volume of 2.
// ---------------------------------------------------------------------------

#[test]
fn acceptance_01_torus_certifies_exactly_two() {
    let path = manifold("torus");
    let (report, elapsed) = run_report(&["bounds", path.to_str().unwrap()]);
    assert!(
        elapsed < Duration::from_secs(1),
        "bounds took {elapsed:?}, budget is 1 s"
    );

    let result = &report["result"];
    assert_eq!(result["intervals"]["isv"]["lower"], "2");
    assert_eq!(result["intervals"]["isv"]["upper"], "2");

    // The certificate must exist (both sides witnessed) and agree on the value.
    let certificate = &result["certificates"]["isv"];
    assert!(!certificate.is_null(), "integral volume is certified");
    assert_eq!(certificate["value"], "2");
    assert_eq!(certificate["lower"]["provenance"], "betti");
    assert_eq!(certificate["upper"]["provenance"], "triangulation");
    assert_eq!(certificate["lower"]["witnessed"], true);
    assert_eq!(certificate["upper"]["witnessed"], true);

    pass(1, "torus certifies exactly two");
}

// ---------------------------------------------------------------------------
// 02 — the torus tower of indices 1, 2, 4, 8 halves its ratio at every level.
// ---------------------------------------------------------------------------

#[test]
fn acceptance_02_stable_torus_ratios_halve() {
    let path = manifold("torus");
    let (report, elapsed) = run_report(&[
        "stable",
        path.to_str().unwrap(),
        "--depth",
        "4",
        "--seed",
        "11",
    ]);
    assert!(
        elapsed < Duration::from_secs(30),
        "stable took {elapsed:?}, budget is 30 s"
    );

    let levels = report["result"]["levels"].as_array().expect("levels");
    assert_eq!(levels.len(), 4, "four tower levels");
    let indices: Vec<u64> = levels.iter().map(|l| l["d"].as_u64().unwrap()).collect();
    assert_eq!(indices, vec![1, 2, 4, 8]);
    let ratios: Vec<&str> = levels.iter().map(|l| l["ratio"].as_str().unwrap()).collect();
    assert_eq!(ratios, vec!["2", "1", "1/2", "1/4"]);
    assert_eq!(report["result"]["stisv_upper_bound"], "1/4");
    assert_eq!(report["result"]["best_level"], 3);

    pass(2, "stable torus ratios halve");
}

// ---------------------------------------------------------------------------
// 03 — genus two sits in [4, 6], and a supplied volume of 4 reproduces the
//      same lower bound through the comparison chain.
// ---------------------------------------------------------------------------

#[test]
fn acceptance_03_genus_two_interval_and_sandwich() {
    let path = manifold("genus2");
    let (plain, _) = run_report(&["bounds", path.to_str().unwrap()]);
    let plain_interval = &plain["result"]["intervals"]["isv"];
    assert_eq!(plain_interval["lower"], "4");
    assert_eq!(plain_interval["upper"], "6");

    // The lower bound comes from the first Betti number, the upper one from
    // the six-triangle fan.
    let entries = plain["result"]["ledgers"]["isv"]["entries"]
        .as_array()
        .expect("isv entries");
    assert!(entries
        .iter()
        .any(|e| e["provenance"] == "betti" && e["kind"] == "lower" && e["value"] == "4"));
    assert!(entries
        .iter()
        .any(|e| e["provenance"] == "triangulation" && e["kind"] == "upper" && e["value"] == "6"));

    // Supplying the known simplicial volume 4 must reproduce the identical
    // lower bound along the route sv <= stisv <= isv, changing nothing.
    let (with_sv, _) = run_report(&["bounds", path.to_str().unwrap(), "--sv", "4"]);
    let sv_interval = &with_sv["result"]["intervals"]["isv"];
    assert_eq!(sv_interval["lower"], "4");
    assert_eq!(sv_interval["upper"], "6");
    let entries = with_sv["result"]["ledgers"]["isv"]["entries"]
        .as_array()
        .expect("isv entries");
    assert!(
        entries
            .iter()
            .any(|e| e["provenance"] == "sv_sandwich" && e["kind"] == "lower" && e["value"] == "4"),
        "the supplied volume flows into the integral ledger through the chain"
    );
    // The stable ledger is bracketed by the same number from below.
    let stable_entries = with_sv["result"]["ledgers"]["stisv"]["entries"]
        .as_array()
        .expect("stisv entries");
    assert!(stable_entries
        .iter()
        .any(|e| e["provenance"] == "sv_sandwich" && e["kind"] == "lower"));

    pass(3, "genus-two interval and sandwich");
}

// ---------------------------------------------------------------------------
// 04 — homology growth along towers never violates the stable upper bound,
//      and surface towers carry no torsion at all.
// ---------------------------------------------------------------------------

#[test]
fn acceptance_04_growth_reports_are_clean() {
    for stem in ["torus", "genus2"] {
        let path = manifold(stem);
        let (report, _) = run_report(&[
            "growth",
            path.to_str().unwrap(),
            "--depth",
            "3",
            "--seed",
            "5",
        ]);
        let result = &report["result"];
        assert_eq!(result["violations"], 0, "{stem}: zero violations");

        let levels = result["growth"]["levels"].as_array().expect("levels");
        assert_eq!(levels.len(), 3, "{stem}: three tower levels");
        for level in levels {
            for degree in level["degrees"].as_array().expect("degrees") {
                // Surfaces have torsion-free homology: order one, log zero.
                assert_eq!(degree["torsion_order"], "1", "{stem}: torsion order");
                assert_eq!(degree["torsion_log_ratio"], "0.0", "{stem}: torsion ratio");
                assert_eq!(degree["torsion_ok"], true);
                for ratio in degree["rank_ratios"].as_array().expect("rank ratios") {
                    assert_eq!(
                        ratio["ok"], true,
                        "{stem}: rank ratio {} within bound",
                        ratio["ratio"]
                    );
                }
            }
        }
    }
    pass(4, "growth reports are clean");
}

// ---------------------------------------------------------------------------
// 05 — hyperbolic constants: angles, overlap counts, volumes, gap constant.
// ---------------------------------------------------------------------------

/// Independent check value for the Lobachevsky function: direct numerical
/// integration of −∫₀^θ ln|2 sin t| dt by tanh–sinh quadrature in doubles.
/// The route shares nothing with the series evaluation under test.
fn lobachevsky_integral_oracle(theta: f64) -> f64 {
    let half = theta / 2.0;
    let h = 5.0e-4_f64;
    let steps = (9.0 / h) as i64; // u from -4.5 to 4.5
    let mut sum = 0.0;
    for j in 0..=steps {
        let u = -4.5 + h * j as f64;
        let s = std::f64::consts::FRAC_PI_2 * u.sinh();
        let x = half * (1.0 + s.tanh());
        let w = half * std::f64::consts::FRAC_PI_2 * u.cosh() / (s.cosh() * s.cosh());
        if x > 0.0 && x < theta && w.is_finite() && w > 0.0 {
            sum += w * -(2.0 * x.sin()).ln();
        }
    }
    sum * h
}

#[test]
fn acceptance_05_hyperbolic_constants() {
    let digits = 50;
    let tiny = Real::parse_decimal("1e-45", digits).unwrap();
    let pi = Real::pi(digits);
    let two_pi = pi.mul(&Real::from_u64(2, digits));

    // The regular ideal triangle is equilateral: its angle is pi/3.
    let alpha3 = dihedral_angle_regular_ideal(3, digits).unwrap();
    let third = pi.div(&Real::from_u64(3, digits));
    assert_eq!(
        alpha3.sub(&third).abs().cmp(&tiny),
        Ordering::Less,
        "alpha_3 equals pi/3 to 1e-45"
    );

    // Overlap counts: five in dimension four, four ever after.
    assert_eq!(k_overlap(4, digits).unwrap(), 5);
    for n in 5..=50 {
        assert_eq!(k_overlap(n, digits).unwrap(), 4, "k_{n}");
    }

    // Strict bracketing k*alpha < 2*pi < (k+1)*alpha, and the ratio
    // 2*pi/alpha stays a certified non-integer.
    let integer_gap = Real::parse_decimal("1e-10", digits).unwrap();
    for n in 4..=50 {
        let alpha = dihedral_angle_regular_ideal(n, digits).unwrap();
        let k = k_overlap(n, digits).unwrap();
        let low = alpha.mul(&Real::from_u64(k, digits));
        let high = alpha.mul(&Real::from_u64(k + 1, digits));
        assert_eq!(low.cmp(&two_pi), Ordering::Less, "k_{n} * alpha_{n} < 2pi");
        assert_eq!(two_pi.cmp(&high), Ordering::Less, "2pi < (k_{n}+1) * alpha_{n}");

        let ratio = two_pi.div(&alpha);
        let nearest = Real::from_i64(ratio.to_f64().round() as i64, digits);
        assert_eq!(
            integer_gap.cmp(&ratio.sub(&nearest).abs()),
            Ordering::Less,
            "2pi/alpha_{n} is at distance > 1e-10 from every integer"
        );
    }

    // The ideal regular tetrahedron volume against direct quadrature.
    let v3 = regular_ideal_volume(3, digits).unwrap();
    let oracle = 3.0 * lobachevsky_integral_oracle(std::f64::consts::PI / 3.0);
    assert!(
        (v3.to_f64() - oracle).abs() < 1e-6,
        "v_3 = {} vs integral {oracle}",
        v3.to_f64()
    );

    // The gap constant stays strictly below one on random positive inputs.
    let one = Real::one(digits);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for draw in 0..1000 {
        let mut params = HypParams::new(3, digits);
        params.eps = Some(Real::from_f64(rng.gen_range(1e-6..12.0), digits));
        params.a = Some(Real::from_f64(rng.gen_range(1e-6..10.0), digits));
        params.delta = Some(Real::from_f64(rng.gen_range(1e-6..1.0), digits));
        params.eta = Some(Real::from_f64(rng.gen_range(1e-6..10.0), digits));
        let gap = c_const(&params, &v3).unwrap();
        assert_eq!(
            gap.value.cmp(&one),
            Ordering::Less,
            "draw {draw}: gap constant below one"
        );
    }

    pass(5, "hyperbolic constants");
}

// ---------------------------------------------------------------------------
// 06 — fillings in cones obey the linear norm law, and the prism homotopy
//      satisfies its defining identity exactly.
// ---------------------------------------------------------------------------

/// The projection collapsing every simplex to the constant one at the apex.
fn constant_projection(chain: &OrderedChain, apex: usize) -> OrderedChain {
    let mut out = OrderedChain::new(chain.degree());
    out.add_to(vec![apex; chain.degree() + 1], chain.coefficient_sum());
    out
}

/// Subdivides until the complex is simplicial, so that it can be coned.
/// Two rounds always suffice.
fn simplicial_host(mut base: DeltaComplex) -> DeltaComplex {
    for _ in 0..2 {
        if base.is_simplicial() {
            return base;
        }
        base = base.barycentric_subdivision();
    }
    assert!(base.is_simplicial(), "second subdivision is simplicial");
    base
}

#[test]
fn acceptance_06_filling_norm_law() {
    let bases = [
        simplicial_host(builtin::torus()),
        simplicial_host(builtin::genus_surface(2)),
        builtin::tetrahedron_boundary(),
        builtin::octahedron(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut filled = 0usize;

    for base in &bases {
        let cone = base.cone().unwrap();
        let n = cone.dimension() as u64;
        let triangles = base.simplex_count(2);
        for degree in 1..=2usize {
            let mut produced = 0usize;
            while produced < 26 {
                // A random chain carried by base triangles (repetitions
                // allowed) is a boundary, hence a null-homologous cycle.
                let mut w = OrderedChain::new(degree + 1);
                for _ in 0..rng.gen_range(1..8) {
                    let corners = base.vertex_tuple(2, rng.gen_range(0..triangles));
                    let stutter = rng.gen_range(0..4usize);
                    let mut tuple = Vec::with_capacity(degree + 2);
                    for slot in 0..=degree + 1 {
                        tuple.push(corners[(slot + slot / (1 + stutter)) % 3]);
                    }
                    w.add_to(tuple, rng.gen_range(-4i64..=4));
                }
                let z = w.boundary();
                if z.is_zero() {
                    continue;
                }
                assert!(z.is_cycle());
                let fill = efficient_fill(&cone, &z).unwrap();
                assert_eq!(fill.fill.boundary(), z, "the filling bounds the cycle exactly");
                assert!(
                    fill.fill_l1 <= (n + 1) * z.l1(),
                    "norm law: {} <= {}",
                    fill.fill_l1,
                    (n + 1) * z.l1()
                );
                assert!(fill.fill_l1 <= fill.l1_bound);
                if degree % 2 == 0 {
                    assert_eq!(fill.constant_coefficient, 0);
                }
                produced += 1;
                filled += 1;
            }
        }
    }
    assert!(filled >= 200, "filled {filled} cycles, need at least 200");

    // The contracting homotopy satisfies dh + hd = id - p on arbitrary
    // chains below the apex, with the projection recomputed here from its
    // definition.
    let apex = 6usize;
    let mut checked = 0usize;
    while checked < 200 {
        let degree = rng.gen_range(1..=3usize);
        let mut chain = OrderedChain::new(degree);
        for _ in 0..rng.gen_range(1..10) {
            let tuple: Vec<usize> = (0..=degree).map(|_| rng.gen_range(0..apex)).collect();
            chain.add_to(tuple, rng.gen_range(-5i64..=5));
        }
        if chain.is_zero() {
            continue;
        }
        let h_chain = prism_homotopy(&chain, apex).unwrap();
        let h_boundary = prism_homotopy(&chain.boundary(), apex).unwrap();
        let lhs = h_chain.boundary().plus(&h_boundary);
        let rhs = chain.minus(&constant_projection(&chain, apex));
        assert_eq!(lhs, rhs, "prism identity dh + hd = id - p");
        assert!(h_chain.l1() <= (degree as u64 + 1) * chain.l1());
        checked += 1;
    }

    pass(6, "filling norm law");
}

// ---------------------------------------------------------------------------
// 07 — capping with the fundamental cycle realizes every rational Betti
//      number as a duality rank.
// ---------------------------------------------------------------------------

#[test]
fn acceptance_07_duality_ranks_match_betti_numbers() {
    let suite = [
        builtin::torus(),
        builtin::genus_surface(2),
        builtin::tetrahedron_boundary(),
    ];
    for complex in &suite {
        let name = complex.name().unwrap_or("?").to_string();
        let cycle = complex.fundamental_cycle().unwrap();
        let profile = HomologyProfile::compute(complex, &[], 30).unwrap();
        for k in 0..=complex.dimension() {
            let rank = duality_rank(complex, &cycle, k, Field::Q).unwrap();
            assert_eq!(
                rank, profile.degrees[k].betti,
                "{name}: duality rank in degree {k}"
            );
        }
    }
    pass(7, "duality ranks match Betti numbers");
}

// ---------------------------------------------------------------------------
// 08 — cover algebra: subgroup counts, Euler multiplicativity, and lifted
//      fundamental cycles across every enumerated cover.
// ---------------------------------------------------------------------------

#[test]
fn acceptance_08_cover_algebra() {
    // Enumeration ceilings are set per manifold so the census stays within
    // memory; the genus-two group already has 5275 subgroups at index four.
    let census: Vec<(DeltaComplex, usize, Vec<usize>)> = vec![
        (builtin::torus(), 6, vec![1, 3, 4, 7, 6, 12]),
        (builtin::genus_surface(2), 3, vec![1, 15, 220]),
        (builtin::three_torus(), 4, vec![1, 7, 13, 35]),
        (builtin::real_projective_plane(), 6, vec![1, 1, 0, 0, 0, 0]),
        (builtin::tetrahedron_boundary(), 6, vec![1, 0, 0, 0, 0, 0]),
        (builtin::octahedron(), 6, vec![1, 0, 0, 0, 0, 0]),
        (builtin::three_sphere(), 6, vec![1, 0, 0, 0, 0, 0]),
    ];

    let mut covers_checked = 0usize;
    for (base, ceiling, expected_counts) in &census {
        let name = base.name().unwrap_or("?").to_string();
        let pres = presentation(base).unwrap();
        let records = low_index(&pres, *ceiling).unwrap();
        assert_eq!(
            &count_by_index(&records, *ceiling),
            expected_counts,
            "{name}: subgroup counts by index"
        );

        let base_chi = base.euler_characteristic();
        let base_cycle = base.fundamental_cycle().ok();
        let top = base.dimension();
        let base_size = base.simplex_count(top) as u64;

        for record in &records {
            let d = record.index;
            let cover = build_cover(base, record).unwrap();
            assert_eq!(
                cover.euler_characteristic(),
                (d as i64) * base_chi,
                "{name}: Euler characteristic multiplies by the index {d}"
            );

            if let Some(cycle) = &base_cycle {
                let lifted = transfer_chain(cycle, d);
                let boundary = cover.boundary(&lifted).unwrap();
                assert!(boundary.is_zero(), "{name}: lifted cycle closes at index {d}");
                assert_eq!(
                    lifted.l1(),
                    (d as u64) * base_size,
                    "{name}: lifted norm is the index times the base size"
                );
            }

            if name == "genus2" {
                let profile = HomologyProfile::compute(&cover, &[], 20).unwrap();
                assert_eq!(
                    profile.degrees[1].betti,
                    2 * (d + 1),
                    "genus2: a degree-{d} cover is a surface of genus {}",
                    d + 1
                );
            }
            covers_checked += 1;
        }
    }

    // The free group of rank two, as the wedge of two circles: Hall's
    // counts 1, 3, 13 at indices one, two, three.
    let wedge = DeltaComplex::new(1, 1, vec![[0, 0], [0, 0]], Vec::new()).unwrap();
    let pres = presentation(&wedge).unwrap();
    let records = low_index(&pres, 3).unwrap();
    assert_eq!(count_by_index(&records, 3), vec![1, 3, 13]);

    assert!(covers_checked > 280, "checked {covers_checked} covers");
    pass(8, "cover algebra");
}

// ---------------------------------------------------------------------------
// 09 — ten thousand random moves, every one preserving the Euler
//      characteristic and the full homology profile, reproducibly.
// ---------------------------------------------------------------------------

/// One random walk through applicable moves.  Verifies chi and the full
/// homology profile after every step and returns the move log.
fn move_walk(start: &DeltaComplex, seed: u64, steps: usize) -> Vec<Move> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = start.clone();
    let chi = current.euler_characteristic();
    let profile = HomologyProfile::compute(&current, &[2, 3], 30).unwrap();
    let mut log = Vec::with_capacity(steps);
    for step in 0..steps {
        let (moves, _) = applicable_moves(&current).unwrap();
        assert!(!moves.is_empty(), "moves available at step {step}");
        let mv = moves[rng.gen_range(0..moves.len())].clone();
        let next = apply_move(&current, &mv).unwrap();
        assert_eq!(next.euler_characteristic(), chi, "chi preserved by {mv:?}");
        let next_profile = HomologyProfile::compute(&next, &[2, 3], 30).unwrap();
        assert_eq!(next_profile, profile, "homology preserved by {mv:?}");
        log.push(mv);
        current = next;
    }
    log
}

#[test]
fn acceptance_09_moves_preserve_homology() {
    let starts = [
        builtin::torus(),
        builtin::genus_surface(2),
        builtin::real_projective_plane(),
        builtin::tetrahedron_boundary(),
        builtin::octahedron(),
        builtin::three_sphere(),
    ];
    let total = 10_000usize;
    let walk_length = 40usize;
    let walks = total / walk_length;

    let mut performed = 0usize;
    let mut first_logs: Vec<Vec<Move>> = Vec::new();
    for walk in 0..walks {
        let start = &starts[walk % starts.len()];
        let seed = 1_000 + walk as u64;
        let log = move_walk(start, seed, walk_length);
        performed += log.len();
        if walk < starts.len() {
            first_logs.push(log);
        }
    }
    assert_eq!(performed, total, "exactly ten thousand moves verified");

    // Determinism: replaying a walk with its seed reproduces the identical
    // move log on every starting complex.
    for (walk, expected) in first_logs.iter().enumerate() {
        let start = &starts[walk % starts.len()];
        let replay = move_walk(start, 1_000 + walk as u64, walk_length);
        assert_eq!(&replay, expected, "walk {walk} replays identically");
    }

    pass(9, "moves preserve homology");
}

// ---------------------------------------------------------------------------
// 10 — no pipeline run ever leaves a ledger with a lower bound above an
//      upper bound, on any corpus manifold.
// ---------------------------------------------------------------------------

fn assert_ordered(name: &str, ledger: &BoundLedger) {
    if let (Some(lower), Some(upper)) = (ledger.best_lower(), ledger.best_upper()) {
        assert_ne!(
            lower.value.compare(&upper.value),
            Ordering::Greater,
            "{name}: best lower {} exceeds best upper {}",
            lower.value,
            upper.value
        );
    }
}

#[test]
fn acceptance_10_ledgers_never_cross() {
    let digits = 50;
    for complex in &corpus() {
        let name = complex.name().unwrap_or("?").to_string();
        let bounds = match basic_bounds(complex, &[2, 3, 5], digits) {
            Ok((bounds, _)) => bounds,
            Err(simvol::Error::NotOrientable(_)) => continue, // honest refusal, nothing to cross
            Err(e) => panic!("{name}: {e}"),
        };
        let mut bounds = bounds;

        if name == "genus2" {
            // Two independent routes to the known volume four: directly, and
            // as hyperbolic area over the ideal triangle volume.  Both must
            // coexist with the homology and triangulation entries.
            let four = Real::from_u64(4, digits);
            register_sv(&mut bounds, &four, serde_json::json!({"source": "known value"}))
                .unwrap();
            let area = Real::pi(digits).mul(&Real::from_u64(4, digits));
            let recovered = register_hyperbolic_volume(&mut bounds, &area).unwrap();
            assert!(
                recovered.sub(&four).abs().cmp(&Real::parse_decimal("1e-40", digits).unwrap())
                    == Ordering::Less,
                "area 4*pi over pi gives volume 4"
            );
        }

        // Tower entries for the surfaces (the ones with fast floors).
        if complex.dimension() == 2 {
            let chain = simvol::pi1::subgroup_chain(complex, 2).unwrap();
            let config = SearchConfig { seed: 3, ..SearchConfig::default() };
            let sequence = stable_sequence(&chain, &config).unwrap();
            bounds.stisv.insert(sequence.entry()).unwrap();
        }

        for (label, ledger) in [
            ("sv", &bounds.sv),
            ("isv", &bounds.isv),
            ("stisv", &bounds.stisv),
        ] {
            assert_ordered(&format!("{name}/{label}"), ledger);
        }

        // Every certified value agrees with both of its witnesses.
        for ledger in [&bounds.sv, &bounds.isv, &bounds.stisv] {
            if let Some(cert) = ledger.certify() {
                assert_eq!(cert.value.compare(&cert.lower.value), Ordering::Equal);
                assert_eq!(cert.value.compare(&cert.upper.value), Ordering::Equal);
            }
        }
    }

    // Torsion entries use logarithms; make sure a real-valued lower bound
    // coexisting with rational uppers still trips the wire when crossed.
    let mut ledger = BoundLedger::new(simvol::bounds::Target::Isv);
    ledger
        .insert(simvol::bounds::BoundEntry {
            kind: Kind::Upper,
            value: BoundValue::integer(3),
            provenance: simvol::bounds::Provenance::Triangulation,
            witnessed: true,
            certificate: Value::Null,
        })
        .unwrap();
    let crossing = ledger.insert(simvol::bounds::BoundEntry {
        kind: Kind::Lower,
        value: BoundValue::Real(Real::from_u64(5, 50)),
        provenance: simvol::bounds::Provenance::Betti,
        witnessed: true,
        certificate: Value::Null,
    });
    assert!(
        matches!(crossing, Err(simvol::Error::Contradiction { .. })),
        "a crossing insert is rejected, not recorded"
    );

    pass(10, "ledgers never cross");
}
