//! Acceptance run: one PASS/FAIL line per criterion and a summary line.
//!
//! Run with `cargo test --release --test acceptance`. The process exits
//! nonzero on a failed criterion only when `ACCEPTANCE_STRICT=1`, so that
//! the workspace test run reports failures without aborting.
mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use common::*;
use knnrgg::experiments::{
    gilbert_penrose_compare, paper_constants, sample_global, sharpness_width, threshold_estimate, threshold_samples,
    thresholds_up_to,
};
use knnrgg::graph_analysis::{is_connected, vertex_connectivity};
use knnrgg::knn_graph::{build_gilbert, build_knn};
use knnrgg::local_events::{
    a_k_witnesses, detect_a_k, detect_a_k_for_each, detect_a_kq, hex_hull, locality_check, make_box,
    paper_tile_parameter, reflected_cap_empty, region_cover, tiles_met_by_polyline, BoxSpec, TileGrid, TILE_SLACK,
};
use knnrgg::point_process::{
    delete_points, poisson_count, sample_fixed, sample_poisson, surviving_indices, Point, Region,
};
use knnrgg::rng::substream_seed;
use knnrgg::selfcheck::planted_dense_case;
use rand::{seq::index::sample, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, Poisson};

type Outcome = Result<(bool, String), String>;

const SEED: u64 = 20_240_601;

fn seed_for(criterion: u64, i: u64) -> u64 {
    substream_seed(substream_seed(SEED, criterion), i)
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

/// k-NN lists equal the brute-force sort on 100 sets of up to 300 points.
fn c1() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut compared = 0;
    for i in 0..100u64 {
        let m = 2 + (i as usize * 37) % 299;
        let side = (m as f64).sqrt().max(1.0);
        let ps = sample_fixed(Region::new(0.0, 0.0, side).map_err(e)?, m, seed_for(1, i)).map_err(e)?;
        for k in 1..=10 {
            let g = build_knn(&ps, k).map_err(e)?;
            let oracle = brute_knn(&ps, k);
            compared += 1;
            let lists_match = (0..m).all(|v| g.out_neighbors(v) == oracle[v].as_slice());
            if !lists_match || edge_set(g.graph()) != brute_knn_edges(&ps, k) {
                mismatches += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((mismatches == 0 && secs < 10.0, format!("{compared} graphs, {mismatches} mismatches, {secs:.2} s")))
}

/// Vertex connectivity equals the exhaustive subset oracle on 200 small graphs.
fn c2() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(2, i));
        let m = rng.gen_range(2..=10);
        let side = rng.gen_range(1.0..4.0);
        let ps = sample_fixed(Region::new(0.0, 0.0, side).map_err(e)?, m, rng.gen()).map_err(e)?;
        let g = if i % 2 == 0 {
            build_knn(&ps, rng.gen_range(1..m)).map_err(e)?
        } else {
            build_gilbert(&ps, rng.gen_range(0.2..1.5) * side).map_err(e)?
        };
        if vertex_connectivity(&g) != brute_vertex_connectivity(g.graph()) {
            mismatches += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((mismatches == 0 && secs < 30.0, format!("200 graphs, {mismatches} mismatches, {secs:.2} s")))
}

/// `edges(G_k) ⊆ edges(G_{k+1})`, each graph built independently.
fn c3() -> Outcome {
    let mut violations = 0;
    for i in 0..500u64 {
        let ps = sample_poisson(Region::square_of_area(1024.0).map_err(e)?, 1.0, seed_for(3, i)).map_err(e)?;
        let mut prev = edge_set(build_knn(&ps, 1).map_err(e)?.graph());
        for k in 1..=20 {
            let next = edge_set(build_knn(&ps, k + 1).map_err(e)?.graph());
            violations += usize::from(!prev.is_subset(&next));
            prev = next;
        }
    }
    Ok((violations == 0, format!("500 samples x 20 k, {violations} violations")))
}

/// Deleting `L` points: graph inclusion, and survival of the dense-tile event.
fn c4() -> Outcome {
    let mut graph_violations = 0;
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(4, i));
        let ps = sample_poisson(Region::square_of_area(rng.gen_range(50.0..500.0)).map_err(e)?, 1.0, rng.gen())
            .map_err(e)?;
        if ps.len() < 7 {
            continue;
        }
        let l = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=10);
        let t = sample(&mut rng, ps.len(), l).into_vec();
        let reduced = delete_points(&ps, &t).map_err(e)?;
        let labels = surviving_indices(ps.len(), &t);
        let big = build_knn(&ps, k + l).map_err(e)?;
        let small = build_knn(&reduced, k).map_err(e)?;
        if !small.graph().edges().all(|(u, v)| big.graph().has_edge(labels[u], labels[v])) {
            graph_violations += 1;
        }
    }

    // log n = 40 so that L <= 5 stays below eta log n / (2 N^2)
    let (n_tiles, eta) = (1u64, 0.5);
    let spec = BoxSpec::new(40f64.exp(), 4, Point::new(0.0, 0.0)).map_err(e)?;
    let (mut cases, mut event_violations, mut attempts) = (0, 0, 0u64);
    while cases < 200 && attempts < 2000 {
        attempts += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(40, attempts));
        let l = rng.gen_range(1..=5usize);
        let k = rng.gen_range(1..=5usize);
        let Some((ps, q, cluster)) = planted_dense_case(&spec, n_tiles, eta, k + l, rng.gen()).map_err(e)? else {
            continue;
        };
        let before = detect_a_kq(&ps, &spec, k + l, n_tiles, eta).map_err(e)?;
        if !(before.a_k && before.strict.contains(&q)) {
            continue;
        }
        cases += 1;
        let t: Vec<usize> = sample(&mut rng, cluster.len(), l).into_iter().map(|i| cluster[i]).collect();
        let after = detect_a_kq(&delete_points(&ps, &t).map_err(e)?, &spec, k, n_tiles, eta).map_err(e)?;
        event_violations += usize::from(!(after.a_k && after.primed.contains(&q)));
    }
    Ok((
        graph_violations == 0 && cases == 200 && event_violations == 0,
        format!("graphs: 200 cases, {graph_violations} violations; events: {cases} cases, {event_violations} violations"),
    ))
}

/// `A_{k'}` implies `A_k` for `k < k' <= k + 10`.
fn c5() -> Outcome {
    let spec = make_box(4096.0, 6).map_err(e)?;
    let ks: Vec<usize> = (1..=15).collect();
    let (mut pairs, mut violations, mut events) = (0, 0, 0);
    for i in 0..400u64 {
        let ps = spec.sample(seed_for(5, i)).map_err(e)?;
        let flags = detect_a_k_for_each(&ps, &ks).map_err(e)?;
        for k in 1..=5 {
            let a_k = detect_a_k(&ps, k).map_err(e)?;
            events += usize::from(a_k);
            for kp in k + 1..=k + 10 {
                pairs += 1;
                violations += usize::from(flags[kp - 1] && !a_k);
            }
        }
    }
    Ok((violations == 0 && events > 0, format!("400 boxes, {pairs} pairs, {events} A_k events, {violations} violations")))
}

/// Local event in a box under the edge-length hypotheses forces a global
/// component inside the box's central half.
fn c6() -> Outcome {
    let n = 2f64.powi(14);
    let pilot = threshold_samples(n, 60, seed_for(6, 0)).map_err(e)?;
    let k = threshold_estimate(n, 0.5, pilot).k_q;
    let (mut checked, mut skipped, mut events, mut violations, mut disconnected_misses, mut global_fail) =
        (0, 0, 0, 0, 0, 0);
    for i in 0..500u64 {
        let g = sample_global(n, seed_for(6, i + 1)).map_err(e)?;
        let cover = region_cover(g.points.region(), n, 30).map_err(e)?;
        let r = locality_check(&g.points, k, &cover).map_err(e)?;
        global_fail += usize::from(!r.global_hypothesis);
        checked += r.boxes_checked;
        skipped += r.boxes_skipped;
        events += r.event_boxes;
        violations += r.violations.len();
        if r.event_boxes > 0 && is_connected(&build_knn(&g.points, k).map_err(e)?) {
            disconnected_misses += 1;
        }
    }
    Ok((
        violations == 0 && disconnected_misses == 0 && events > 0,
        format!(
            "k = {k}, 500 samples ({global_fail} fail the global hypothesis), {checked} boxes checked, {skipped} skipped, \
             {events} event boxes, {violations} violations, {disconnected_misses} connected despite an event"
        ),
    ))
}

/// Reflected caps of harvested witnesses contain no points.
fn c7() -> Outcome {
    let spec = make_box(4096.0, 6).map_err(e)?;
    let (mut witnesses, mut failures, mut boxes) = (0, 0, 0u64);
    while (witnesses < 50 || boxes < 20) && boxes < 5000 {
        let ps = spec.sample(seed_for(7, boxes)).map_err(e)?;
        boxes += 1;
        for k in 1..=3 {
            let g = build_knn(&ps, k).map_err(e)?;
            for w in a_k_witnesses(&ps, k).map_err(e)? {
                let pts: Vec<Point> = w.iter().map(|&v| ps.point(v)).collect();
                let hull = hex_hull(&pts).map_err(e)?;
                witnesses += 1;
                failures += usize::from(!reflected_cap_empty(&ps, &w, &g, &hull).map_err(e)?);
            }
        }
    }
    Ok((witnesses >= 50 && failures == 0, format!("{witnesses} witnesses from {boxes} boxes, {failures} non-empty caps")))
}

fn circle(c: Point, r: f64, sides: usize, phase: f64) -> Vec<Point> {
    let mut v: Vec<Point> = (0..sides)
        .map(|i| {
            let t = phase + i as f64 / sides as f64 * std::f64::consts::TAU;
            Point::new(c.x + r * t.cos(), c.y + r * t.sin())
        })
        .collect();
    v.push(v[0]);
    v
}

/// Tiles met by a closed curve stay below `9 l / tile side`.
fn c8() -> Outcome {
    // hull boundaries of witnesses; the bound concerns curves at least one tile long
    let spec = make_box(4096.0, 6).map_err(e)?;
    let n_tiles = 16;
    let grid = TileGrid::new(spec, n_tiles).map_err(e)?;
    let (mut hulls, mut short, mut hull_violations, mut boxes) = (0, 0, 0, 0u64);
    while hulls < 100 && boxes < 5000 {
        let ps = spec.sample(seed_for(8, boxes)).map_err(e)?;
        boxes += 1;
        for k in 1..=3 {
            for w in a_k_witnesses(&ps, k).map_err(e)? {
                let pts: Vec<Point> = w.iter().map(|&v| ps.point(v)).collect();
                let chain = hex_hull(&pts).map_err(e)?.boundary();
                let t = tiles_met_by_polyline(&chain, &grid).map_err(e)?;
                if t.length < grid.tile_side() {
                    short += 1;
                    continue;
                }
                hulls += 1;
                hull_violations += usize::from(!t.within_bound);
            }
        }
    }

    // synthetic loops: circles, grid-aligned squares, random polygons
    let big = make_box(1e6, 4).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(8, 10_000));
    let (mut loops, mut loop_violations, mut oracle_mismatches) = (0, 0, 0);
    for i in 0..20 {
        let g = TileGrid::new(big, [2, 4, 8, 16][i % 4]).map_err(e)?;
        let (o, s) = (g.origin(), g.tile_side());
        let chain = match i % 3 {
            0 => circle(big.center, big.side() * rng.gen_range(0.05..0.45), rng.gen_range(6..60), rng.gen()),
            1 => {
                let (a, b) = (rng.gen_range(0..4) as f64, rng.gen_range(0..4) as f64);
                let w = rng.gen_range(1..4) as f64;
                [(a, b), (a + w, b), (a + w, b + w), (a, b + w), (a, b)]
                    .iter()
                    .map(|&(x, y)| Point::new(o.x + x * s, o.y + y * s))
                    .collect()
            }
            _ => {
                let r = big.region();
                let mut v: Vec<Point> = (0..rng.gen_range(3..10))
                    .map(|_| Point::new(r.origin_x + rng.gen::<f64>() * r.side, r.origin_y + rng.gen::<f64>() * r.side))
                    .collect();
                v.push(v[0]);
                v
            }
        };
        let t = tiles_met_by_polyline(&chain, &g).map_err(e)?;
        loops += 1;
        loop_violations += usize::from(!t.within_bound || t.tiles_met as f64 > 9.0 * t.length / s);
        let oracle = rasterized_tiles(&chain, o, s, g.per_side(), TILE_SLACK * s);
        oracle_mismatches += usize::from(oracle != t.tiles_met);
    }
    Ok((
        hulls >= 100 && hull_violations == 0 && loop_violations == 0 && oracle_mismatches == 0,
        format!(
            "{hulls} hull boundaries ({short} shorter than a tile skipped), {hull_violations} violations; \
             {loops} synthetic loops, {loop_violations} violations, {oracle_mismatches} oracle mismatches"
        ),
    ))
}

/// Median threshold over log n at n = 2^16.
fn c9() -> Outcome {
    let start = Instant::now();
    let n = 2f64.powi(16);
    let est = threshold_estimate(n, 0.5, threshold_samples(n, 200, seed_for(9, 0)).map_err(e)?);
    let ok = (0.25..=0.80).contains(&est.c_hat);
    Ok((
        ok,
        format!(
            "K_0.5 = {}, log n = {:.3}, c_hat = {:.4} (asymptotic band 0.3043 < c_* < 1/log 7 = {:.4}), {:.1} s",
            est.k_q,
            est.log_n,
            est.c_hat,
            1.0 / 7f64.ln(),
            start.elapsed().as_secs_f64()
        ),
    ))
}

/// Window widths k_0.9 - k_0.1 stay small as n grows.
fn c10() -> Outcome {
    let mut widths = Vec::new();
    for (i, p) in [10, 13, 16].into_iter().enumerate() {
        let s = sharpness_width(2f64.powi(p), 0.1, 300, seed_for(10, i as u64)).map_err(e)?;
        widths.push((p, s.k_eps, s.k_one_minus_eps, s.width));
    }
    let ok = widths[2].3 <= widths[0].3 + 2 && widths.iter().all(|w| w.3 <= 12);
    let text = widths.iter().map(|w| format!("w(2^{}) = {} - {} = {}", w.0, w.2, w.1, w.3)).collect::<Vec<_>>();
    Ok((ok, text.join(", ")))
}

/// Connectivity radius against no-isolated-vertex radius.
fn c11() -> Outcome {
    let c = gilbert_penrose_compare(4096.0, 300, seed_for(11, 0)).map_err(e)?;
    Ok((
        c.coincidence_fraction >= 0.7 && c.dominance,
        format!("coincidence {:.3}, r_connect >= r_no_isolated in every trial: {}", c.coincidence_fraction, c.dominance),
    ))
}

/// `K_s` is non-decreasing in `s`, and the s-connectivity increment is evaluated.
fn c12() -> Outcome {
    let mut violations = 0;
    let mut undefined = 0;
    for i in 0..200u64 {
        let g = sample_global(4096.0, seed_for(12, i)).map_err(e)?;
        let ks = thresholds_up_to(&g.points, 4).map_err(e)?;
        undefined += ks.iter().filter(|k| k.is_none()).count();
        let vals: Vec<usize> = ks.iter().flatten().copied().collect();
        violations += usize::from(vals.windows(2).any(|w| w[1] < w[0]));
    }
    let m = 30;
    let k = paper_constants(m, paper_tile_parameter(m), 0.5, Some((4096.0, 4))).map_err(e)?;
    let (_, _, inc) = k.s_increment.ok_or("increment missing")?;
    Ok((
        violations == 0 && undefined == 0,
        format!(
            "200 samples, {violations} violations; floor(2 C s log log n) = {inc} at (M, N, eta, n, s) = ({m}, {}, 0.5, 4096, 4)",
            k.n_tiles
        ),
    ))
}

fn chi2_critical(df: usize) -> f64 {
    ChiSquared::new(df as f64).unwrap().inverse_cdf(1.0 - 1e-3)
}

/// Poisson and uniform sampling statistics at significance 1e-3.
fn c13() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    // counts at mean 20 against the pmf, tails pooled to expected >= 5
    let draws = 50_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(13, 0));
    let mut hist = vec![0u64; 200];
    for _ in 0..draws {
        let c = poisson_count(20.0, &mut rng).map_err(e)? as usize;
        hist[c.min(199)] += 1;
    }
    let pois = Poisson::new(20.0).unwrap();
    let (lo, hi) = (8usize, 33usize);
    let mut chi2 = 0.0;
    let mut bins = 0;
    let mut add = |obs: u64, p: f64| {
        let exp = p * draws as f64;
        chi2 += (obs as f64 - exp).powi(2) / exp;
        bins += 1;
    };
    add(hist[..lo].iter().sum(), (0..lo).map(|k| pois.pmf(k as u64)).sum());
    for k in lo..hi {
        add(hist[k], pois.pmf(k as u64));
    }
    add(hist[hi..].iter().sum(), 1.0 - (0..hi).map(|k| pois.pmf(k as u64)).sum::<f64>());
    let crit = chi2_critical(bins - 1);
    ok &= chi2 < crit;
    notes.push(format!("Poisson(20) chi2 = {chi2:.1} < {crit:.1}"));

    // mean 100: sample mean within 4 standard errors
    let mean100 = (0..10_000).map(|_| poisson_count(100.0, &mut rng).unwrap() as f64).sum::<f64>() / 10_000.0;
    ok &= (mean100 - 100.0).abs() <= 0.4;
    notes.push(format!("mean(100) = {mean100:.3}"));

    // mean 1e6 stays exact-valued and near its mean
    let big = poisson_count(1e6, &mut rng).map_err(e)? as f64;
    ok &= (big - 1e6).abs() <= 5.0 * 1e3;

    // process counts on a square of area 1024
    let region = Region::square_of_area(1024.0).map_err(e)?;
    let count_mean = (0..2000u64)
        .map(|i| sample_poisson(region, 1.0, seed_for(13, 1 + i)).unwrap().len() as f64)
        .sum::<f64>()
        / 2000.0;
    ok &= (count_mean - 1024.0).abs() <= 4.0 * (1024.0f64 / 2000.0).sqrt();
    notes.push(format!("mean count(1024) = {count_mean:.2}"));

    // coordinates: mean x and a 4 x 4 cell uniformity test
    let unit = Region::new(0.0, 0.0, 1.0).map_err(e)?;
    let ps = sample_fixed(unit, 1000, seed_for(13, 5000)).map_err(e)?;
    let mean_x = ps.points().iter().map(|p| p.x).sum::<f64>() / 1000.0;
    ok &= (mean_x - 0.5).abs() <= 4.0 / 12f64.sqrt() / 1000f64.sqrt();
    notes.push(format!("mean x = {mean_x:.4}"));
    let ps = sample_fixed(unit, 16_000, seed_for(13, 5001)).map_err(e)?;
    let mut cells = [0u64; 16];
    for p in ps.points() {
        cells[((p.x * 4.0) as usize).min(3) * 4 + ((p.y * 4.0) as usize).min(3)] += 1;
    }
    let chi2: f64 = cells.iter().map(|&c| (c as f64 - 1000.0).powi(2) / 1000.0).sum();
    let crit = chi2_critical(15);
    ok &= chi2 < crit;
    notes.push(format!("4x4 chi2 = {chi2:.1} < {crit:.1}"));
    Ok((ok, notes.join(", ")))
}

/// A campaign replayed from its manifest gives byte-identical CSVs at
/// one thread and at the default thread count.
fn c14() -> Outcome {
    let dir = tempfile::tempdir().map_err(e)?;
    let bin = env!("CARGO_BIN_EXE_knnrgg");
    let run = |args: &[&str], threads: Option<&str>| -> Result<(), String> {
        let mut cmd = Command::new(bin);
        cmd.args(args).env_remove("KNNRGG_THREADS");
        if let Some(t) = threads {
            cmd.args(["--threads", t]);
        }
        let o = cmd.output().map_err(e)?;
        if o.status.success() {
            Ok(())
        } else {
            Err(format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)))
        }
    };
    let campaigns: [&[&str]; 4] = [
        &["sweep", "--n", "4096", "--k", "1:15", "--trials", "60", "--seed", "42"],
        &["threshold", "--n", "2048", "--trials", "60", "--seed", "5"],
        &["local-events", "--n", "1e6", "--k", "2", "--M", "4", "--N", "4", "--trials", "60", "--seed", "9"],
        &["gilbert-compare", "--n", "1024", "--trials", "40", "--seed", "3"],
    ];
    let mut identical = 0;
    for (i, args) in campaigns.iter().enumerate() {
        let first = dir.path().join(format!("c{i}.csv"));
        let mut a: Vec<&str> = args.to_vec();
        let first_s = first.to_str().unwrap().to_string();
        a.extend(["--out", &first_s]);
        run(&a, None)?;
        let manifest = format!("{first_s}.manifest.json");
        let reference = std::fs::read(&first).map_err(e)?;
        let mut same = true;
        for threads in [Some("1"), None, Some("4")] {
            let again = dir.path().join(format!("c{i}-{}.csv", threads.unwrap_or("default")));
            let again_s = again.to_str().unwrap().to_string();
            run(&["--config", &manifest, args[0], "--out", &again_s], threads)?;
            same &= std::fs::read(&again).map_err(e)? == reference;
        }
        identical += usize::from(same);
    }
    Ok((identical == campaigns.len(), format!("{identical}/{} campaigns byte-identical across reruns", campaigns.len())))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("k-NN oracle equivalence", c1),
        ("vertex connectivity oracle equivalence", c2),
        ("edge nesting", c3),
        ("deletion suite", c4),
        ("A_k nesting", c5),
        ("locality sweep", c6),
        ("reflected caps empty", c7),
        ("curve-tile bound", c8),
        ("threshold constant", c9),
        ("sharpness trend", c10),
        ("Gilbert coincidence", c11),
        ("s-connectivity coupling", c12),
        ("sampler statistics", c13),
        ("reproducibility", c14),
    ];
    let filter: BTreeSet<usize> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect())
        .unwrap_or_default();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let (pass, detail) = match f() {
            Ok(r) => r,
            Err(msg) => (false, format!("error: {msg}")),
        };
        failed += usize::from(!pass);
        println!(
            "{} {id:2} {name}: {detail} [{:.1} s]",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {failed} criteria failed");
    if failed > 0 && std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
