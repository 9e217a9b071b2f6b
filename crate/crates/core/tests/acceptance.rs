//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion.
//!
//! The process exits non-zero when a criterion's outcome differs from the
//! outcome recorded in `KNOWN_FAILURES`, so an unexpected pass is reported
//! just like an unexpected failure.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropbbs::bbs::{evolve, find_period, random_state, shift_m, shift_n, solve_q, sweep_row, trajectory, BbsState};
use tropbbs::cli::{read_state, IDENTITY_TOLERANCE, VALUATION_TOLERANCE};
use tropbbs::curve::Point;
use tropbbs::jacobian::{change_of_basis, fixture, JacobianData};
use tropbbs::oracle::{default_prefactor, det_identities_check, valuation_check};
use tropbbs::rational::{rat, ratio, Rat};
use tropbbs::spectral::{newton_check, SpectralData};
use tropbbs::trop::{Trop, TropMatrix};

/// Criteria whose failure is understood and documented, with the reason.
const KNOWN_FAILURES: &[(u32, &str)] = &[
    (3, "printed t=3 carrier column is not the solution of the carrier equation"),
    (5, "(f) F is not a multiple of F' on some degenerate states"),
];

type Verdict = Result<String, String>;

fn fixture_state(name: &str) -> BbsState {
    read_state(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)).expect("fixture parses")
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(elapsed < limit, format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let s = fixture_state("example1.txt");
    let sd = SpectralData::new(&s).map_err(|e| e.to_string())?;
    let expected: Vec<((i64, i64), Rat)> =
        (0..=3).flat_map(|i| (0..=3 - i).map(move |j| ((i, j), rat(3 - i - j)))).collect();
    let mut got: Vec<_> = sd.charpoly_trop.terms().collect();
    got.sort();
    let mut want = expected.clone();
    want.sort();
    check(got == want, format!("tropical polynomial {got:?}"))?;
    let j = JacobianData::new(&s).map_err(|e| e.to_string())?;
    check(j.period.genus() == 0, format!("genus {}", j.period.genus()))?;
    check((j.fpp, j.fp) == (1, 3), format!("F''={}, F'={}", j.fpp, j.fp))?;
    let f = find_period(&s, 100).map_err(|e| e.to_string())?;
    check(f == 3, format!("simulated F={f}"))?;
    within(start.elapsed(), Duration::from_secs(1), "example I")?;
    Ok(format!("10 coefficients, genus 0, F''=1, F'=3, F=3 in {:?}", start.elapsed()))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let s = fixture_state("example2.txt");
    let j = JacobianData::new(&s).map_err(|e| e.to_string())?;
    let p = &j.curve.spectral.charpoly_trop;
    for ((i, jj), c) in
        [((3, 0), 0), ((2, 1), 0), ((2, 0), 2), ((1, 2), 0), ((1, 1), 2), ((1, 0), 4), ((0, 4), 0), ((0, 3), 2)]
    {
        check(p.coeff(i, jj) == Trop::int(c), format!("c({i},{jj}) = {}", p.coeff(i, jj)))?;
    }
    let vertices: BTreeSet<Point> = j.curve.locus.vertices.iter().copied().collect();
    let want: BTreeSet<Point> = [(0, 0), (2, 2), (4, 2)].iter().map(|&(x, y)| (rat(x), rat(y))).collect();
    check(vertices == want, format!("vertices {vertices:?}"))?;
    check(j.period.genus() == 3, format!("genus {}", j.period.genus()))?;
    check(j.period.det() == rat(64), format!("det B = {}", j.period.det()))?;

    let fixed = fixture::example_ii_basis(&j.curve.graph).map_err(|e| e.to_string())?;
    let target = vec![ints(&[4, 0, -2]), ints(&[0, 4, -2]), ints(&[-2, -2, 6])];
    check(fixed.b == target, format!("fixture basis B = {:?}", fixed.b))?;
    let u = change_of_basis(&j.curve.graph, &j.period, &fixed).ok_or("no unimodular change of basis")?;
    let congruent: Vec<Vec<Rat>> = (0..3)
        .map(|r| {
            (0..3)
                .map(|c| {
                    (0..3)
                        .flat_map(|i| (0..3).map(move |k| (i, k)))
                        .map(|(i, k)| rat(u[i][r]) * j.period.b[i][k] * rat(u[k][c]))
                        .sum()
                })
                .collect()
        })
        .collect();
    check(congruent == target, "computed basis is not congruent to the fixture basis")?;

    let under_fixture = JacobianData::with_period(j.curve.clone(), fixed, s.d() as u64).map_err(|e| e.to_string())?;
    let reduced = &under_fixture.reduced_t;
    check(*reduced == vec![ratio(-1, 8), ratio(-1, 8), ratio(-1, 4)], format!("B^-1 T = {reduced:?}"))?;
    check((j.fpp, j.fp) == (8, 8), format!("F''={}, F'={}", j.fpp, j.fp))?;
    let f = find_period(&s, 100).map_err(|e| e.to_string())?;
    check(f == 8, format!("simulated F={f}"))?;
    let states = trajectory(&s, 8).map_err(|e| e.to_string())?;
    check(states[8].grid() == s.grid(), "t=8 grid differs from t=0")?;
    within(start.elapsed(), Duration::from_secs(2), "example II")?;
    Ok(format!("coefficients, vertices, genus 3, det 64, B^-1 T, F''=F'=F=8 in {:?}", start.elapsed()))
}

const SOLITON_BLOCKS: [&str; 4] = [
    ".|...1.2...\n.|..1.2....\n.|.1.2.....\n1|322.11333",
    ".|....111..\n.|...12....\n.|..12.....\n1|332..2233",
    ".|.....2.1.\n.|....3....\n.|...3.....\n1|333..1323",
    ".|.....11.1\n.|....21...\n.|...21....\n1|3331.1232",
];

fn strip_carrier(block: &str) -> Vec<&str> {
    block.lines().map(|l| l.split_once('|').map_or(l, |(_, w)| w)).collect()
}

fn criterion_3() -> Verdict {
    let s = fixture_state("soliton.txt");
    let states = trajectory(&s, 3).map_err(|e| e.to_string())?;
    let mut mismatched = Vec::new();
    for (t, (st, want)) in states.iter().zip(SOLITON_BLOCKS).enumerate() {
        let q = solve_q(st).map_err(|e| e.to_string())?;
        let got = st.render(q.grid.first_row());
        check(strip_carrier(&got) == strip_carrier(want), format!("ball grid differs at t={t}:\n{got}"))?;
        if got != want {
            mismatched.push(t);
        }
    }
    if mismatched.is_empty() {
        return Ok("all four blocks match byte-for-byte".into());
    }
    // The printed carrier column at t=3 has its 1 at m=1. Sweeping it
    // around the ring does not reproduce it, so no state has that column.
    let st = &states[3];
    let printed = ints(&[1, 0, 0, 0]);
    let mut q = printed.clone();
    for n in (0..st.n()).rev() {
        q = sweep_row(&st.grid()[n], &q);
    }
    check(mismatched == [3], format!("blocks differ at t={mismatched:?}"))?;
    check(q != printed, "the printed t=3 carrier column is a fixed point")?;
    Err(format!(
        "ball grids match at t=0..3; carrier column differs at t=3 only (printed Q_1 is not a fixed point: it sweeps to {})",
        q.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    ))
}

fn criterion_4() -> Verdict {
    let s = fixture_state("example2.txt");
    let j = JacobianData::new(&s).map_err(|e| e.to_string())?;
    let fixed = fixture::example_ii_basis(&j.curve.graph).map_err(|e| e.to_string())?;
    let (_, n_route, m_routes) = fixture::example_ii_routes(&j.curve.graph).map_err(|e| e.to_string())?;
    let bv = |k: &[i64]| -> Vec<Rat> { (0..3).map(|r| (0..3).map(|c| fixed.b[r][c] * rat(k[c])).sum()).collect() };
    let four_n: Vec<Rat> = fixed.periods(&n_route).iter().map(|x| x * rat(4)).collect();
    check(four_n == bv(&[-1, -1, -2]), format!("4N = {four_n:?}"))?;
    let m_sum: Vec<Rat> = (0..3).map(|i| m_routes.iter().map(|p| fixed.periods(p)[i]).sum()).collect();
    check(m_sum == bv(&[2, 1, 1]), format!("sum M = {m_sum:?}"))?;

    let four_n: Vec<Rat> = j.vectors.n.iter().map(|x| x * rat(4)).collect();
    check(j.period.in_lattice(&four_n).map_err(|e| e.to_string())?, "4N not in B Z^3 under the computed basis")?;
    let m_sum: Vec<Rat> = (0..3).map(|i| j.vectors.m.iter().map(|v| v[i]).sum()).collect();
    check(j.period.in_lattice(&m_sum).map_err(|e| e.to_string())?, "sum M not in B Z^3 under the computed basis")?;
    Ok("exact under the fixture basis, lattice membership under the computed basis".into())
}

#[derive(Default)]
struct Probe {
    checked: usize,
    terminated: usize,
    equal: usize,
    multiple: Vec<String>,
    not_multiple: Vec<String>,
}

fn property_state(s: &BbsState, probe: &mut Probe) -> Result<(), String> {
    let ctx = |what: &str| format!("{what} on\n{}", s.to_text());
    let sol = solve_q(s).map_err(|e| ctx(&e.to_string()))?;
    let q = &sol.grid.q;
    for n in 0..s.n() {
        check(q[n].iter().sum::<Rat>() == s.level(), ctx("(a) row of Q does not sum to A"))?;
        check(sweep_row(&s.grid()[n], &q[(n + 1) % s.n()]) == q[n], ctx("(a) Q is not a fixed point"))?;
    }

    let j = JacobianData::new(s).map_err(|e| ctx(&e.to_string()))?;
    let trop = &j.curve.spectral.charpoly_trop;
    for (name, other) in
        [("evolve", evolve(s).map_err(|e| e.to_string())?), ("shift_n", shift_n(s)), ("shift_m", shift_m(s))]
    {
        let sd = SpectralData::new(&other).map_err(|e| ctx(&e.to_string()))?;
        check(&sd.charpoly_trop == trop, ctx(&format!("(b) polynomial changes under {name}")))?;
    }
    check(j.curve.locus.is_balanced(), ctx("(c) unbalanced vertex"))?;
    if j.period.genus() >= 1 {
        check(
            j.period.is_symmetric() && j.period.is_positive_definite(),
            ctx("(d) B is not symmetric positive definite"),
        )?;
    }
    let nn: Vec<Rat> = j.vectors.n.iter().map(|x| x * rat(s.n() as i64)).collect();
    check(j.period.in_lattice(&nn).map_err(|e| e.to_string())?, ctx("(e) N.N not in the lattice"))?;
    let g = j.period.genus();
    let m_sum: Vec<Rat> = (0..g).map(|i| j.vectors.m.iter().map(|v| v[i]).sum()).collect();
    check(j.period.in_lattice(&m_sum).map_err(|e| e.to_string())?, ctx("(e) sum of M not in the lattice"))?;
    let newton = newton_check(&j.curve.spectral);
    check(newton.ok, ctx(&format!("(g) {:?}", newton.violations)))?;

    probe.checked += 1;
    if let Ok(f) = find_period(s, 500) {
        probe.terminated += 1;
        let line = format!(
            "F={f} F'={} F''={} d={} g={} critical classes={} for {}",
            j.fp,
            j.fpp,
            s.d(),
            j.period.genus(),
            sol.critical_classes,
            s.to_text().replace('\n', " / ")
        );
        if f == j.fp {
            probe.equal += 1;
        } else if f % j.fp == 0 {
            probe.multiple.push(line);
        } else {
            probe.not_multiple.push(line);
        }
    }
    Ok(())
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut probe = Probe::default();
    let mut errors = Vec::new();
    for _ in 0..60 {
        let s = random_state(&mut rng, 4, 4, 4);
        if let Err(e) = property_state(&s, &mut probe) {
            errors.push(e);
        }
    }
    for line in &probe.multiple {
        println!("    F != F' (multiple): {line}");
    }
    for line in &probe.not_multiple {
        println!("    F not a multiple of F': {line}");
    }
    if let Some(e) = errors.first() {
        return Err(format!("{} of 60 states fail (a)-(e),(g); first: {e}", errors.len()));
    }
    let summary = format!(
        "(a)-(e),(g) hold on {} states; {} terminate within 500 steps: {} with F=F', {} proper multiples, {} not multiples",
        probe.checked,
        probe.terminated,
        probe.equal,
        probe.multiple.len(),
        probe.not_multiple.len()
    );
    if probe.not_multiple.is_empty() {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn oracle_state(s: &BbsState, seed: u64) -> Result<(f64, f64), String> {
    let k1 = default_prefactor(s);
    let val = valuation_check(s, &[0.05, 0.02], k1).map_err(|e| e.to_string())?;
    check(
        val.max_deviation <= VALUATION_TOLERANCE,
        format!("valuation deviation {:.3e} on\n{}", val.max_deviation, s.to_text()),
    )?;
    let mut worst: f64 = 0.0;
    for eps in [0.05, 0.02] {
        let rep = det_identities_check(s, eps, k1, 20, seed).map_err(|e| e.to_string())?;
        check(rep.passed(IDENTITY_TOLERANCE), format!("identities fail at eps={eps} on\n{}", s.to_text()))?;
        worst = worst.max(rep.max_det_err());
    }
    Ok((val.max_deviation, worst))
}

fn criterion_6() -> Verdict {
    let mut states = vec![fixture_state("example1.txt"), fixture_state("example2.txt")];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    states.extend((0..10).map(|_| random_state(&mut rng, 4, 4, 4)));
    let (mut dev, mut err) = (0.0f64, 0.0f64);
    for (k, s) in states.iter().enumerate() {
        let (d, e) = oracle_state(s, k as u64)?;
        dev = dev.max(d);
        err = err.max(e);
    }
    Ok(format!("{} states: worst valuation deviation {dev:.2e}, worst determinant error {err:.2e}", states.len()))
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64) -> TropMatrix {
    let rows = (0..n)
        .map(|_| {
            (0..n).map(|_| if rng.gen_bool(0.25) { Trop::Infinity } else { Trop::int(rng.gen_range(lo..=9)) }).collect()
        })
        .collect();
    TropMatrix::from_rows(rows).expect("square")
}

fn brute_mul(a: &TropMatrix, b: &TropMatrix) -> Vec<Vec<Trop>> {
    let n = a.size();
    (0..n)
        .map(|i| (0..n).map(|k| (0..n).map(|j| a[(i, j)] * b[(j, k)]).min().unwrap_or(Trop::Infinity)).collect())
        .collect()
}

/// Every simple cycle, as node sequences starting from their least node.
fn simple_cycles(a: &TropMatrix) -> Vec<Vec<usize>> {
    fn extend(a: &TropMatrix, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let (start, last) = (path[0], *path.last().unwrap());
        for next in start..a.size() {
            if !a[(last, next)].is_finite() {
                continue;
            }
            if next == start {
                out.push(path.clone());
            } else if !path.contains(&next) {
                path.push(next);
                extend(a, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..a.size() {
        extend(a, &mut vec![s], &mut out);
    }
    out
}

fn cycle_weight(a: &TropMatrix, c: &[usize]) -> Rat {
    (0..c.len()).map(|k| a[(c[k], c[(k + 1) % c.len()])].finite().unwrap()).sum()
}

fn brute_cycle_mean(a: &TropMatrix) -> Option<Rat> {
    simple_cycles(a).iter().map(|c| cycle_weight(a, c) / rat(c.len() as i64)).min()
}

/// Least weight over simple paths, with the empty path on the diagonal.
fn brute_star(a: &TropMatrix) -> Vec<Vec<Trop>> {
    fn walk(a: &TropMatrix, at: usize, w: Rat, seen: &mut Vec<bool>, best: &mut [Trop]) {
        best[at] = best[at].min(Trop::Finite(w));
        for next in 0..a.size() {
            if let (false, Trop::Finite(e)) = (seen[next], a[(at, next)]) {
                seen[next] = true;
                walk(a, next, w + e, seen, best);
                seen[next] = false;
            }
        }
    }
    (0..a.size())
        .map(|i| {
            let mut best = vec![Trop::Infinity; a.size()];
            let mut seen = vec![false; a.size()];
            seen[i] = true;
            walk(a, i, rat(0), &mut seen, &mut best);
            // Closed walks through i other than the empty one.
            for c in simple_cycles(a).iter().filter(|c| c.contains(&i)) {
                best[i] = best[i].min(Trop::Finite(cycle_weight(a, c)));
            }
            best
        })
        .collect()
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut stars, mut diverging) = (0, 0);
    for trial in 0..100 {
        let n = rng.gen_range(1..=5);
        let lo = if trial % 2 == 0 { 0 } else { -3 };
        let a = random_matrix(&mut rng, n, lo);
        let b = random_matrix(&mut rng, n, lo);
        let prod = a.mul(&b).map_err(|e| e.to_string())?;
        check(
            prod.rows().map(|r| r.to_vec()).collect::<Vec<_>>() == brute_mul(&a, &b),
            format!("product differs on trial {trial}"),
        )?;

        let mean = brute_cycle_mean(&a);
        match (a.min_cycle_mean(), mean) {
            (Ok(got), Some(want)) => check(got == want, format!("cycle mean {got} vs {want} on trial {trial}"))?,
            (Err(_), None) => {}
            (got, want) => return Err(format!("cycle mean {got:?} vs {want:?} on trial {trial}")),
        }

        let negative = mean.is_some_and(|m| m < rat(0));
        match a.kleene_star() {
            Ok(star) => {
                check(!negative, format!("star accepted a negative cycle on trial {trial}"))?;
                let got: Vec<Vec<Trop>> = star.rows().map(|r| r.to_vec()).collect();
                let want: Vec<Vec<Trop>> = brute_star(&a)
                    .into_iter()
                    .enumerate()
                    .map(|(i, mut row)| {
                        row[i] = row[i].min(Trop::one());
                        row
                    })
                    .collect();
                check(got == want, format!("star differs on trial {trial}"))?;
                stars += 1;
            }
            Err(_) => {
                check(negative, format!("star rejected a matrix without negative cycles on trial {trial}"))?;
                diverging += 1;
            }
        }
    }
    Ok(format!("100 products, 100 cycle means, {stars} stars and {diverging} divergent stars match brute force"))
}

fn main() {
    let criteria: [(u32, fn() -> Verdict); 7] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
    ];
    let mut surprises = 0;
    for (k, run) in criteria {
        let known = KNOWN_FAILURES.iter().find(|(c, _)| *c == k);
        match (run(), known) {
            (Ok(msg), None) => println!("criterion {k}: PASS - {msg}"),
            (Ok(msg), Some(_)) => {
                println!("criterion {k}: PASS - {msg} (listed as a known failure)");
                surprises += 1;
            }
            (Err(msg), Some((_, why))) => println!("criterion {k}: FAIL (known: {why}) - {msg}"),
            (Err(msg), None) => {
                println!("criterion {k}: FAIL - {msg}");
                surprises += 1;
            }
        }
    }
    if surprises > 0 {
        println!("{surprises} criteria differ from the recorded outcome");
        std::process::exit(1);
    }
}
