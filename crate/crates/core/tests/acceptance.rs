//! Nine property checks against independent references, one verdict line
//! each. Runs as a plain binary so the verdicts always reach the output.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use miser_core::io::bench::{run_suite, suite};
use miser_core::io::gen::{random_rects, random_segs};
use miser_core::io::WeightSpec;
use miser_core::oracle::exact_mwis;
use miser_core::rect::{build_good_grid, grid_bound, layer_count, preprocess, solve_layered, solve_rect, GridOutcome};
use miser_core::seg::{build_hitting_grid, min_point_cover, round_weights, solve_exact, solve_seg_pas};
use miser_core::vcsp::{
    brute_force, gaifman, min_fill_decomposition, solve_dp, validate_decomposition, Graph, Revenue, TreeDecomposition,
    VcspInstance,
};
use miser_core::{verify_independent, Rect, Seg, Solution};

struct Verdict {
    failures: Vec<String>,
    detail: String,
}

impl Verdict {
    fn new() -> Self {
        Verdict { failures: Vec::new(), detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn close_enough(got: f64, want: f64) -> bool {
    got >= want - 1e-9 * want.abs().max(1.0)
}

fn resolved<T: miser_core::Item>(sol: &Solution, pool: &[T]) -> Option<Vec<T>> {
    sol.resolve(pool).map(|v| v.into_iter().cloned().collect())
}

fn rect_instances(seed: u64, count: usize) -> Vec<Vec<Rect>> {
    let mut r = rng(seed);
    let ws = WeightSpec::Range(1, 20);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=12);
            random_rects(&mut r, n, 100, &ws)
        })
        .collect()
}

/// Coordinates are squeezed into a random box so that segments cross often.
fn seg_instances(seed: u64, count: usize, ws: &WeightSpec) -> Vec<Vec<Seg>> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=12);
            let cmax = r.gen_range(4..=40);
            random_segs(&mut r, n, cmax, ws)
        })
        .collect()
}

fn rect_contract() -> Verdict {
    let mut v = Verdict::new();
    let mut runs = 0;
    let mut worst = f64::INFINITY;
    for (i, d) in rect_instances(101, 200).iter().enumerate() {
        for k in 1..=3 {
            let opt = exact_mwis(d, k).unwrap().weight;
            for eps in [0.3, 0.5] {
                runs += 1;
                let sol = solve_rect(d, k, eps).unwrap();
                let picked = resolved(&sol, d);
                v.check(picked.as_deref().is_some_and(verify_independent), || format!("instance {i} k={k} eps={eps}: output not independent"));
                v.check(close_enough(sol.weight, (1.0 - eps) * opt), || format!("instance {i} k={k} eps={eps}: {} < (1-eps)*{opt}", sol.weight));
                if opt > 0.0 {
                    worst = worst.min(sol.weight / opt);
                }
            }
        }
    }
    v.detail = format!("{runs} runs, worst weight/opt {worst:.3}");
    v
}

fn seg_exact() -> Verdict {
    let mut v = Verdict::new();
    let mut runs = 0;
    let ws = WeightSpec::Classes(vec![1.0, 2.0, 3.0, 5.0]);
    for (i, d) in seg_instances(202, 200, &ws).iter().enumerate() {
        for k in 1..=3 {
            runs += 1;
            let opt = exact_mwis(d, k).unwrap().weight;
            let sol = solve_exact(d, k).unwrap();
            v.check(sol.weight == opt, || format!("instance {i} k={k}: {} != {opt}", sol.weight));
            v.check(sol.len() <= k, || format!("instance {i} k={k}: {} items", sol.len()));
            v.check(resolved(&sol, d).as_deref().is_some_and(verify_independent), || format!("instance {i} k={k}: not independent"));
        }
    }
    v.detail = format!("{runs} runs");
    v
}

fn seg_pas() -> Verdict {
    let mut v = Verdict::new();
    let mut runs = 0;
    let mut worst = f64::INFINITY;
    let ws = WeightSpec::Range(1, 50);
    for (i, d) in seg_instances(303, 200, &ws).iter().enumerate() {
        for k in 1..=3 {
            let opt = exact_mwis(d, k).unwrap().weight;
            for eps in [0.3, 0.5] {
                runs += 1;
                let sol = solve_seg_pas(d, k, eps).unwrap();
                v.check(close_enough(sol.weight, (1.0 - eps) * opt), || format!("instance {i} k={k} eps={eps}: {} < (1-eps)*{opt}", sol.weight));
                v.check(sol.len() <= k, || format!("instance {i} k={k}: {} items", sol.len()));
                v.check(resolved(&sol, d).as_deref().is_some_and(verify_independent), || format!("instance {i} k={k}: not independent"));
                if opt > 0.0 {
                    worst = worst.min(sol.weight / opt);
                }
            }
        }
    }
    v.detail = format!("{runs} runs, worst weight/opt {worst:.3}");
    v
}

/// Integer revenues keep sums exact; about one binary entry in six is
/// forbidden.
fn random_vcsp(r: &mut ChaCha8Rng) -> VcspInstance {
    let mut inst = VcspInstance::new();
    let n = r.gen_range(1..=8);
    for _ in 0..n {
        let d = r.gen_range(1..=4);
        inst.add_variable((0..d).map(|_| Revenue::Finite(r.gen_range(-3..=6) as f64)).collect());
    }
    let density = r.gen_range(0.1..0.7);
    for u in 0..n {
        for w in u + 1..n {
            if !r.gen_bool(density) {
                continue;
            }
            let (du, dw) = (inst.domain_size(u), inst.domain_size(w));
            let table: Vec<Revenue> = (0..du * dw)
                .map(|_| if r.gen_bool(1.0 / 6.0) { Revenue::NegInf } else { Revenue::Finite(r.gen_range(-2..=4) as f64) })
                .collect();
            inst.add_binary(u, w, move |a, b| table[a * dw + b]);
        }
    }
    inst
}

/// Decomposition from an arbitrary elimination order: one bag per vertex,
/// attached to the bag of its earliest-eliminated later neighbour.
fn elimination_decomposition(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.num_vertices();
    let mut adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|w| g.has_edge(u, w)).collect()).collect();
    let mut step = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        step[v] = i;
    }
    let mut bags = Vec::new();
    for &v in order {
        let later: Vec<usize> = (0..n).filter(|&u| adj[v][u] && step[u] > step[v]).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj[a][b] = true;
                }
            }
        }
        let mut bag = later;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    let mut parent: Vec<Option<usize>> =
        (0..n).map(|i| bags[i].iter().filter(|&&u| u != order[i]).map(|&u| step[u]).min()).collect();
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    for w in roots.windows(2) {
        parent[w[0]] = Some(w[1]);
    }
    TreeDecomposition { parent, bags }
}

fn vcsp_engine() -> Verdict {
    let mut v = Verdict::new();
    let mut r = rng(404);
    let mut max_width = 0;
    for i in 0..500 {
        let inst = random_vcsp(&mut r);
        let g = gaifman(&inst);
        let td = min_fill_decomposition(&g);
        max_width = max_width.max(td.width());
        v.check(validate_decomposition(&g, &td), || format!("instance {i}: invalid min-fill decomposition"));
        let want = brute_force(&inst).unwrap();
        let got = solve_dp(&inst, &td).unwrap();
        v.check(got == want, || format!("instance {i}: dp {got:?} vs brute force {want:?}"));
        let mut order: Vec<usize> = (0..inst.num_vars()).collect();
        order.shuffle(&mut r);
        for other in [TreeDecomposition::trivial(inst.num_vars()), elimination_decomposition(&g, &order)] {
            v.check(validate_decomposition(&g, &other), || format!("instance {i}: reference decomposition invalid"));
            let alt = solve_dp(&inst, &other).unwrap();
            v.check(alt == want, || format!("instance {i}: result depends on the decomposition: {alt:?} vs {want:?}"));
        }
    }
    v.detail = format!("500 instances, largest min-fill width {max_width}");
    v
}

fn heaviest(d: &[Rect]) -> &Rect {
    d.iter().max_by(|a, b| a.weight.total_cmp(&b.weight).then(b.id.cmp(&a.id))).unwrap()
}

/// Instances mix the acceptance distribution with crowds of small
/// rectangles, which push the line count past the bound.
fn grid_lemma() -> Verdict {
    let mut v = Verdict::new();
    let mut r = rng(505);
    let (mut grids, mut fallbacks) = (0, 0);
    for i in 0..500 {
        let n = r.gen_range(1..=12);
        let d: Vec<Rect> = if i % 2 == 0 {
            random_rects(&mut r, n, 100, &WeightSpec::Range(1, 20))
        } else {
            (0..n as u32)
                .map(|id| {
                    let (x, y) = (r.gen_range(0..=95), r.gen_range(0..=95));
                    Rect::new(id, x, x + r.gen_range(0..=5), y, y + r.gen_range(0..=5), r.gen_range(5..=8) as f64).unwrap()
                })
                .collect()
        };
        let k = r.gen_range(1..=3);
        let eps = [0.3, 0.5][r.gen_range(0..2)];
        let band = preprocess(&d, heaviest(&d), eps, k);
        match build_good_grid(&band, k, eps) {
            GridOutcome::Grid(g) => {
                grids += 1;
                v.check(g.size() as f64 <= grid_bound(k, eps), || format!("instance {i}: {} lines", g.size()));
                v.check(band.iter().all(|b| g.respected_by(b)), || format!("instance {i}: a rectangle holds no grid point"));
            }
            GridOutcome::Fallback(sol) => {
                fallbacks += 1;
                let opt = exact_mwis(&band, k).unwrap().weight;
                v.check(resolved(&sol, &band).as_deref().is_some_and(verify_independent), || format!("instance {i}: fallback not independent"));
                v.check(close_enough(sol.weight, opt), || format!("instance {i}: fallback {} < opt_k {opt}", sol.weight));
            }
        }
    }
    v.check(fallbacks > 0, || "no instance reached the fallback".into());
    v.detail = format!("{grids} grids, {fallbacks} fallbacks");
    v
}

/// Smallest number of integer points in `[0, 10]` stabbing all intervals.
fn cover_by_search(intervals: &[(i64, i64)], masks_by_size: &[u32]) -> usize {
    let need: Vec<u32> = intervals.iter().map(|&(a, b)| (a..=b).fold(0, |m, x| m | 1 << x)).collect();
    let best = masks_by_size.iter().find(|&&p| need.iter().all(|&m| m & p != 0)).unwrap();
    best.count_ones() as usize
}

fn hitting_grid() -> Verdict {
    let mut v = Verdict::new();
    let (mut accepted, mut rejected) = (0, 0);
    let ws = WeightSpec::Range(1, 5);
    let mut r = rng(606);
    for (i, d) in seg_instances(607, 500, &ws).iter().enumerate() {
        let k = r.gen_range(1..=3);
        match build_hitting_grid(d, k) {
            Some(g) => {
                accepted += 1;
                v.check(g.size() <= (k + 1) * (k + 1), || format!("instance {i} k={k}: {} lines", g.size()));
                v.check(d.iter().all(|s| g.hits_any(s)), || format!("instance {i} k={k}: a segment is missed"));
            }
            None => rejected += 1,
        }
    }
    let stairs: Vec<Seg> = (0..5).map(|i| Seg::vertical(i, 2 * i as i64, 10 * i as i64, 10 * i as i64 + 1, 1.0).unwrap()).collect();
    v.check(build_hitting_grid(&stairs, 1).is_none(), || "staggered family accepted at k=1".into());

    // every set of up to 3 distinct intervals, then random sets of 4..=8
    let mut masks_by_size: Vec<u32> = (0..1u32 << 11).collect();
    masks_by_size.sort_by_key(|m| (m.count_ones(), *m));
    let all: Vec<(i64, i64)> = (0..=10).flat_map(|a| (a..=10).map(move |b| (a, b))).collect();
    let mut sets: Vec<Vec<(i64, i64)>> = vec![Vec::new()];
    for a in 0..all.len() {
        sets.push(vec![all[a]]);
        for b in a + 1..all.len() {
            sets.push(vec![all[a], all[b]]);
            for c in b + 1..all.len() {
                sets.push(vec![all[a], all[b], all[c]]);
            }
        }
    }
    for _ in 0..20_000 {
        let m = r.gen_range(4..=8);
        sets.push((0..m).map(|_| *all.choose(&mut r).unwrap()).collect());
    }
    let mut cover_bad = 0;
    for s in &sets {
        let pts = min_point_cover(s);
        let covers = s.iter().all(|&(a, b)| pts.iter().any(|&p| a <= p && p <= b));
        if !covers || pts.len() != cover_by_search(s, &masks_by_size) {
            cover_bad += 1;
        }
    }
    v.check(cover_bad == 0, || format!("{cover_bad} interval sets with a wrong cover"));
    v.detail = format!("{accepted} accepted, {rejected} rejected, staggered family rejected, {} interval sets", sets.len());
    v
}

fn rounding() -> Verdict {
    let mut v = Verdict::new();
    let mut r = rng(707);
    let mut kept = 0;
    for i in 0..10_000 {
        let top = r.gen_range(1.0..1000.0);
        let eps = r.gen_range(0.05..0.95);
        let k = r.gen_range(1..=5);
        let w = r.gen_range(0.0..1.0) * top;
        let rmax = Seg::horizontal(0, 0, 0, 1, top).unwrap();
        let Ok(item) = Seg::horizontal(1, 5, 0, 1, w.max(1e-6)) else { continue };
        let (out, classes) = round_weights(&[rmax, item], &rmax, eps, k);
        v.check(out.iter().any(|s| s.id == 0 && s.weight == top), || format!("triple {i}: heaviest weight changed"));
        match out.iter().find(|s| s.id == 1) {
            Some(s) => {
                kept += 1;
                let ok = (1.0 - eps) * item.weight < s.weight && s.weight <= item.weight && classes.values().contains(&s.weight);
                v.check(ok, || format!("triple {i}: w={} eps={eps} k={k} rounded to {}", item.weight, s.weight));
            }
            None => v.check(item.weight <= eps * top / k as f64, || format!("triple {i}: w={} dropped above the floor", item.weight)),
        }
    }
    v.detail = format!("10000 triples, {kept} inside the band");
    v
}

/// Value 0 of every variable is free and compatible with everything, as in
/// the rectangle reduction; other values carry nonnegative revenue.
fn baker_soundness() -> Verdict {
    let mut v = Verdict::new();
    let mut r = rng(808);
    let mut worst = f64::INFINITY;
    for i in 0..500 {
        let mut inst = VcspInstance::new();
        let n = r.gen_range(1..=8);
        for _ in 0..n {
            let d = r.gen_range(2..=4);
            let mut un = vec![Revenue::ZERO];
            un.extend((1..d).map(|_| Revenue::Finite(r.gen_range(0..=9) as f64)));
            inst.add_variable(un);
        }
        let density = r.gen_range(0.2..0.8);
        for u in 0..n {
            for w in u + 1..n {
                if r.gen_bool(density) {
                    let dw = inst.domain_size(w);
                    let bad: Vec<bool> = (0..inst.domain_size(u) * dw).map(|_| r.gen_bool(0.4)).collect();
                    inst.add_hard(u, w, move |a, b| a == 0 || b == 0 || !bad[a * dw + b]);
                }
            }
        }
        let full = brute_force(&inst).unwrap().0.value().unwrap();
        let eps = [0.3, 0.5, 0.8][i % 3];
        let half = eps / 2.0;
        let res = solve_layered(&inst, half, &vec![0; n]);
        let got = res.revenue.value().unwrap_or(f64::NEG_INFINITY);
        v.check(inst.evaluate(&res.assignment) == res.revenue, || format!("instance {i}: lifted assignment disagrees with its revenue"));
        v.check(close_enough(got, (1.0 - half) * full), || format!("instance {i} eps={eps}: {got} < (1-eps/2)*{full}"));
        if full > 0.0 {
            worst = worst.min(got / full);
        }
    }
    v.detail = format!("500 instances, worst reduced/full {worst:.3}");
    v
}

fn width_report() -> Verdict {
    let mut v = Verdict::new();
    let spec = suite("desk").unwrap();
    let rep = run_suite(&spec).unwrap();
    let mut by_eps: BTreeMap<String, BTreeMap<usize, usize>> = BTreeMap::new();
    for w in &rep.widths {
        *by_eps.entry(format!("{}", w.eps)).or_default().entry(w.width).or_default() += w.count;
    }
    v.check(!rep.widths.is_empty(), || "no reduced instances were solved".into());
    let parts: Vec<String> = by_eps
        .iter()
        .map(|(eps, hist)| {
            let layers = layer_count(eps.parse::<f64>().unwrap() / 2.0);
            let hist: Vec<String> = hist.iter().map(|(w, c)| format!("{w}:{c}")).collect();
            format!("eps={eps} layers={layers} widths {{{}}}", hist.join(" "))
        })
        .collect();
    v.detail = parts.join("; ");
    v
}

type Check = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let checks: [Check; 9] = [
        ("rectangle approximation contract", rect_contract),
        ("segment exactness", seg_exact),
        ("segment approximation contract", seg_pas),
        ("constraint engine vs brute force", vcsp_engine),
        ("good grid or heavy fallback", grid_lemma),
        ("hitting grid and point cover", hitting_grid),
        ("weight rounding sandwich", rounding),
        ("layered deletion soundness", baker_soundness),
        ("reduced instance width report", width_report),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in checks.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let t = Instant::now();
        let verdict = f();
        let secs = t.elapsed().as_secs_f64();
        let status = if verdict.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("acceptance {}: {status} {name} ({}; {secs:.1}s)", i + 1, verdict.detail);
        for msg in verdict.failures.iter().take(5) {
            println!("    {msg}");
        }
        if !verdict.failures.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
