//! Acceptance criteria, one PASS/FAIL line each. Run with `--nocapture` to
//! see the lines.

use std::time::{Duration, Instant};

use sinr_diagram::geometry::construct_omega_n;
use sinr_diagram::pointloc::{qds_build, CellTag, Qds, Scheme};
use sinr_diagram::rng::SplitMix64;
use sinr_diagram::verify::{self, SuiteReport};
use sinr_diagram::Network;

const SEED: u64 = 20_240_601;

struct Line {
    id: u32,
    name: &'static str,
    pass: bool,
    gated: bool,
    detail: String,
}

fn suite_line(id: u32, name: &'static str, r: &SuiteReport, elapsed: Duration, limit: Option<Duration>) -> Line {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let first = r.instances.iter().find(|i| !i.pass);
    let mut detail = format!("{} instances, {} failures, {:.2?}", r.trials, r.failures, elapsed);
    if let Some(f) = first {
        detail += &format!("; first failing seed {} witness {}", f.instance_seed, f.witness.clone().unwrap_or_default());
    }
    if let Some(l) = limit {
        detail += &format!(" (limit {l:?})");
    }
    Line { id, name, pass: r.pass && in_time, gated: true, detail }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn omega_line() -> Line {
    let (results, elapsed) = timed(|| {
        (2..=6)
            .map(|n| {
                let (net, r) = construct_omega_n(n, 100, true).unwrap();
                (n, net.n(), r)
            })
            .collect::<Vec<_>>()
    });
    let mut pass = elapsed <= Duration::from_secs(300);
    let mut parts = Vec::new();
    for (n, stations, r) in &results {
        let ok = r.r1_pass
            && r.r2_pass
            && r.boundary_samples_per_square >= 100
            && *stations == 4 * n + 1
            && r.cell_count == Some(n + 1);
        pass &= ok;
        parts.push(format!(
            "n={n}: R={} P0={:.2} cells={:?} step={:?} R1={} R2={}",
            r.parameters.radius,
            r.parameters.power,
            r.cell_count,
            r.cell_step,
            r.r1_pass,
            r.r2_pass
        ));
    }
    Line { id: 4, name: "omega(n) construction", pass, gated: true, detail: format!("{}; {elapsed:.2?}", parts.join("; ")) }
}

fn qds_line() -> Line {
    let net = Network::from_parts(
        2,
        &[(vec![0.0, 0.0], 2.0), (vec![2.0, 0.5], 1.0), (vec![-1.5, 1.5], 1.0)],
        0.1,
        1.0,
        2.0,
    )
    .unwrap();
    let q = qds_build(&net, 0, Scheme::C, 0.1, None).unwrap();
    let bytes = q.to_bytes();
    let back = Qds::from_bytes(&bytes).unwrap();
    let identity = back == q && back.to_bytes() == bytes;
    let mut rng = SplitMix64::new(SEED);
    let pts: Vec<[f64; 2]> = (0..100_000).map(|_| [rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)]).collect();
    let (plus, elapsed) = timed(|| pts.iter().filter(|p| back.query(&p[..]) == CellTag::Plus).count());
    Line {
        id: 13,
        name: "QDS round-trip and query throughput",
        pass: identity,
        gated: true,
        detail: format!(
            "round-trip identity {identity}; 1e5 queries in {elapsed:.2?} (soft target 1 s: {}); {plus} plus",
            if elapsed < Duration::from_secs(1) { "met" } else { "missed" }
        ),
    }
}

fn print_line(l: &Line) {
    println!("{} [{:>2}] {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.name, l.detail);
}

struct Lines(Vec<Line>);

impl Lines {
    fn push(&mut self, l: Line) {
        eprint!("progress: ");
        print_line(&l);
        self.0.push(l);
    }
}

#[test]
fn acceptance() {
    let mut lines = Lines(Vec::new());
    let one_d = Some(Duration::from_secs(60));

    let (r, t) = timed(|| verify::verify_bound2n1(200, SEED).unwrap());
    lines.push(suite_line(1, "1D total cells <= 2n - 1", &r, t, one_d));
    let (r, t) = timed(|| verify::verify_nfh1d(200, SEED).unwrap());
    lines.push(suite_line(2, "NFH holds in 1D", &r, t, None));
    let (r, t) = timed(|| verify::verify_weakest(200, SEED).unwrap());
    lines.push(suite_line(3, "weakest station has one cell", &r, t, None));
    lines.push(omega_line());
    let (r, t) = timed(|| verify::verify_two_station(50, SEED, 10_000).unwrap());
    lines.push(suite_line(5, "two-station closed forms", &r, t, None));
    let (r, t) = timed(|| verify::verify_tagcell(20, SEED, 100).unwrap());
    lines.push(suite_line(6, "scheme C soundness", &r, t, None));
    let (r, t) = timed(|| verify::verify_sturm(1000, SEED, 1_000_000).unwrap());
    lines.push(suite_line(7, "Sturm count equals scan oracle", &r, t, None));
    let (r, t) = timed(|| verify::verify_wireconv(4, SEED).unwrap());
    lines.push(suite_line(8, "discrete wire converges", &r, t, None));
    let (r, t) = timed(|| verify::verify_max_principle(20, SEED, 5).unwrap());
    lines.push(suite_line(9, "interference maximum principle", &r, t, None));
    let (r, t) = timed(|| verify::verify_hyperbolic(10, SEED, 10).unwrap());
    lines.push(suite_line(10, "hyperbolic convexity in the (d+1)-map", &r, t, None));
    let (r, t) = timed(|| verify::verify_transform(1000, SEED).unwrap());
    lines.push(suite_line(11, "similarity invariance", &r, t, None));
    let (r, t) = timed(|| verify::verify_voronoi(100, SEED).unwrap());
    lines.push(suite_line(12, "Voronoi containment", &r, t, None));
    lines.push(qds_line());

    println!("acceptance summary");
    for l in &lines.0 {
        print_line(l);
    }
    let failed: Vec<u32> = lines.0.iter().filter(|l| l.gated && !l.pass).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
