//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its measured numbers (run with --nocapture to see them;
//! the per-test ok/FAILED line is the gate either way).

use spatialkit_core::patterns::{
    canonical_net, equivalent_net, fold_net, FaceMap, FaceName, NetName, Pattern, PatternCell,
    GLYPHS, NET_NAMES, PIVOT_NET,
};
use spatialkit_core::render::{rasterize, render_grid2d, RenderStyle};
use spatialkit_core::rng::Rng;
use spatialkit_core::sims::blocks::BlockScene;
use spatialkit_core::sims::paper::{FoldOp, PaperState};
use spatialkit_core::sims::generate_sequence;
use spatialkit_core::voxel::{
    count_bounds, is_connected_6, project_silhouette, settle, CellCoord, OccupancyGrid, ViewAxis,
};
use spatialkit_eval::harness::{evaluate, RunSettings};
use spatialkit_eval::prompt::PromptMode;
use spatialkit_eval::score::{random_baseline, score};
use spatialkit_eval::transport::StubTransport;
use spatialkit_forge::dataset::{dataset_stats, read_manifest, write_dataset};
use spatialkit_forge::params::{suite_table, GenConfig};
use spatialkit_forge::verify::verify_dataset;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::Instant;

/// Master seed of the shared acceptance suite.
const SUITE_SEED: u64 = 1;

struct SharedSuite {
    root: PathBuf,
    generation_secs: f64,
}

fn shared_suite() -> &'static SharedSuite {
    static SUITE: OnceLock<SharedSuite> = OnceLock::new();
    SUITE.get_or_init(|| {
        let root = std::env::temp_dir().join(format!("spatialkit-acceptance-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&root);
        let cfg = GenConfig::default();
        let started = Instant::now();
        // Single-threaded: the runtime criterion is measured on one core.
        let instances =
            spatialkit_forge::generate_suite(SUITE_SEED, 1, &cfg, 1).expect("suite generates");
        let generation_secs = started.elapsed().as_secs_f64();
        write_dataset(&instances, &root, SUITE_SEED, &cfg).expect("suite writes");
        SharedSuite { root, generation_secs }
    })
}

#[test]
fn criterion_01_suite_scale_and_runtime() {
    let suite = shared_suite();
    let manifest = read_manifest(&suite.root).unwrap();
    let mut expected_totals = std::collections::BTreeMap::new();
    for (task, _, count) in suite_table() {
        *expected_totals.entry(task.slug().to_string()).or_insert(0u32) += count;
    }
    let table: Vec<u32> = [
        "2d_rotation",
        "3d_rotation",
        "three_view_projection",
        "paper_folding",
        "cube_unfolding",
        "cube_reconstruction",
        "cross_section",
        "cube_counting",
        "cube_assembly",
        "arrow_moving",
        "block_moving",
    ]
    .iter()
    .map(|slug| manifest.counts[*slug].values().sum::<u32>())
    .collect();
    assert_eq!(table, vec![80, 80, 100, 120, 120, 120, 120, 120, 80, 80, 80]);
    assert_eq!(manifest.instances.len(), 1100);
    assert_eq!(
        expected_totals.values().sum::<u32>(),
        1100,
        "case table totals 1,100 instances"
    );
    assert!(
        suite.generation_secs < 600.0,
        "single-threaded suite generation took {:.1}s",
        suite.generation_secs
    );
    println!(
        "[criterion 1] PASS - 1100 instances at table counts in {:.1}s single-threaded",
        suite.generation_secs
    );
}

#[test]
fn criterion_02_half_suite_verifies_clean() {
    let root = std::env::temp_dir().join(format!("spatialkit-half-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&root);
    let cfg = GenConfig::default();
    let instances = spatialkit_forge::generate_suite(2, 2, &cfg, 4).expect("half suite generates");
    assert_eq!(instances.len(), 550);
    write_dataset(&instances, &root, 2, &cfg).expect("half suite writes");
    let report = verify_dataset(&root).expect("verify runs");
    assert_eq!(report.checked, 550);
    assert!(
        report.ok(),
        "oracle failures: {:?}; byte mismatches: {:?}; count mismatches: {:?}",
        report.oracle_failures,
        report.byte_mismatches,
        report.count_mismatches
    );
    println!("[criterion 2] PASS - 550-instance half suite verified with zero violations");
    let _ = std::fs::remove_dir_all(&root);
}

/// Exhaustive 3x3x3 count-bounds check: the closed-form bounds must equal
/// brute-force min/max over gravity-consistent height assignments, for the
/// two-view and three-view cases. Connectivity-induced min gaps are
/// reported, never silently accepted.
#[test]
fn criterion_03_count_bounds_exhaustive() {
    // A stack in a 3x3x3 box is exactly a height matrix h[y][x] in 0..=3.
    type Sig = (u16, [u8; 3], [u8; 3]);
    let mut seen: std::collections::HashMap<Sig, [u8; 9]> = std::collections::HashMap::new();
    let mut heights = [0u8; 9];
    let mut total_stacks = 0u32;
    loop {
        if heights.iter().any(|&h| h > 0) {
            total_stacks += 1;
            let mut mask = 0u16;
            let mut f = [0u8; 3];
            let mut l = [0u8; 3];
            for y in 0..3 {
                for x in 0..3 {
                    let h = heights[y * 3 + x];
                    if h > 0 {
                        mask |= 1 << (y * 3 + x);
                        f[x] = f[x].max(h);
                        l[y] = l[y].max(h);
                    }
                }
            }
            seen.entry((mask, f, l)).or_insert(heights);
        }
        // Odometer increment over the 4^9 height matrices.
        let mut i = 0;
        loop {
            if i == 9 {
                break;
            }
            heights[i] += 1;
            if heights[i] <= 3 {
                break;
            }
            heights[i] = 0;
            i += 1;
        }
        if i == 9 {
            break;
        }
    }
    assert_eq!(total_stacks, 4u32.pow(9) - 1);

    let mut connectivity_gaps_2v = 0usize;
    let mut connectivity_gaps_3v = 0usize;
    let mut min3_gaps: Vec<(u16, [u8; 3], [u8; 3], usize, usize)> = Vec::new();
    for (&(mask, f, l), rep) in &seen {
        let grid = grid_from_heights(rep);
        let front = project_silhouette(&grid, ViewAxis::Front);
        let top = project_silhouette(&grid, ViewAxis::Top);
        let left = project_silhouette(&grid, ViewAxis::Left);
        let b2 = count_bounds(&front, &top, None).unwrap();
        let b3 = count_bounds(&front, &top, Some(&left)).unwrap();

        let cells: Vec<(usize, usize)> = (0..9)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| (i % 3, i / 3))
            .collect();
        let (lo2, hi2, lo2_conn) = brute_bounds(&cells, &f, None);
        let (lo3, hi3, lo3_conn) = brute_bounds(&cells, &f, Some(&l));
        assert_eq!(
            (b2.min_count, b2.max_count),
            (lo2, hi2),
            "2-view mismatch at mask {mask:#b} f {f:?}"
        );
        assert_eq!(b3.max_count, hi3, "3-view max mismatch at mask {mask:#b} f {f:?} l {l:?}");
        // Soundness always holds: the formula never overshoots the minimum.
        assert!(
            b3.min_count <= lo3,
            "3-view min formula overshoots at mask {mask:#b} f {f:?} l {l:?}"
        );
        if b3.min_count != lo3 {
            min3_gaps.push((mask, f, l, b3.min_count, lo3));
        }
        if lo2_conn.map_or(true, |c| c > lo2) {
            connectivity_gaps_2v += 1;
        }
        if lo3_conn.map_or(true, |c| c > lo3) {
            connectivity_gaps_3v += 1;
        }
    }
    println!(
        "[criterion 3] 2-view min/max and 3-view max equal brute force on {} view signatures \
         from {} stacks; connectivity-induced min gaps (reported, not counted as failures): \
         2-view {}, 3-view {}",
        seen.len(),
        total_stacks,
        connectivity_gaps_2v,
        connectivity_gaps_3v
    );
    if !min3_gaps.is_empty() {
        let (mask, f, l, formula, brute) = min3_gaps[0];
        println!(
            "[criterion 3] 3-view MIN formula is loose on {} of {} signatures; first \
             counterexample: top mask {mask:#011b}, front sums {f:?}, left sums {l:?}: \
             formula {formula}, brute-force {brute}. The formula combines the two marginal \
             bounds max(sum_y(Trow-1+L), sum_x(T-1+F)) and misses cross-constraint surpluses, \
             so it is a sound lower bound but not the exact minimum.",
            min3_gaps.len(),
            seen.len()
        );
    }
    // Exactness as stated: the bound formulas must EQUAL the brute force.
    // The 3-view minimum is provably loose (see the printed counterexample
    // and the failure message), so this assertion documents a genuine
    // defect in the exactness claim rather than an implementation bug.
    assert!(
        min3_gaps.is_empty(),
        "3-view min formula equals brute force on {} signatures but is loose on {}: \
         first counterexample top mask {:#011b}, F {:?}, L {:?}, formula {} vs brute {}. \
         count_bounds keeps the closed-form bound as designed; \
         it brackets every real stack (soundness asserted above), so option placement is \
         unaffected. The exactness claim itself does not hold for the three-view minimum.",
        seen.len() - min3_gaps.len(),
        min3_gaps.len(),
        min3_gaps[0].0,
        min3_gaps[0].1,
        min3_gaps[0].2,
        min3_gaps[0].3,
        min3_gaps[0].4,
    );
}

fn grid_from_heights(h: &[u8; 9]) -> OccupancyGrid {
    let mut cells = Vec::new();
    for y in 0..3 {
        for x in 0..3 {
            for z in 0..h[y * 3 + x] as usize {
                cells.push(CellCoord::new(x, y, z));
            }
        }
    }
    OccupancyGrid::from_cells((3, 3, 3), &cells)
}

/// DFS over gravity-consistent assignments: min, max, and the minimum over
/// 6-connected stacks (None when no connected assignment exists).
fn brute_bounds(
    cells: &[(usize, usize)],
    f: &[u8; 3],
    l: Option<&[u8; 3]>,
) -> (usize, usize, Option<usize>) {
    let n = cells.len();
    let mut assignment = vec![0u8; n];
    let mut best = (usize::MAX, 0usize, None::<usize>);
    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        f: &[u8; 3],
        l: Option<&[u8; 3]>,
        assignment: &mut Vec<u8>,
        best: &mut (usize, usize, Option<usize>),
    ) {
        if i == cells.len() {
            let mut colmax = [0u8; 3];
            let mut rowmax = [0u8; 3];
            let mut total = 0usize;
            for (k, &(x, y)) in cells.iter().enumerate() {
                colmax[x] = colmax[x].max(assignment[k]);
                rowmax[y] = rowmax[y].max(assignment[k]);
                total += assignment[k] as usize;
            }
            for x in 0..3 {
                if f[x] > 0 && colmax[x] != f[x] {
                    return;
                }
            }
            if let Some(l) = l {
                for y in 0..3 {
                    if l[y] > 0 && rowmax[y] != l[y] {
                        return;
                    }
                }
            }
            best.0 = best.0.min(total);
            best.1 = best.1.max(total);
            // Connected minimum: only re-examine totals that could improve.
            if best.2.map_or(true, |c| total < c) {
                let mut stack_cells = Vec::new();
                for (k, &(x, y)) in cells.iter().enumerate() {
                    for z in 0..assignment[k] as usize {
                        stack_cells.push(CellCoord::new(x, y, z));
                    }
                }
                if is_connected_6(&stack_cells) {
                    best.2 = Some(total);
                }
            }
            return;
        }
        let (x, y) = cells[i];
        let cap = match l {
            Some(l) => f[x].min(l[y]),
            None => f[x],
        };
        for h in 1..=cap {
            assignment[i] = h;
            rec(i + 1, cells, f, l, assignment, best);
        }
    }
    rec(0, cells, f, l, &mut assignment, &mut best);
    (best.0, best.1, best.2)
}

#[test]
fn criterion_04_paper_roundtrip_thousand_instances() {
    let mut rng = Rng::from_seed(4);
    let mut done = 0u32;
    while done < 1000 {
        let rows = rng.int(2, 6) as usize;
        let cols = rng.int(2, 6) as usize;
        let folds = rng.int(1, 3) as usize;
        let mut p = PaperState::new(rows, cols);
        let mut fold_ok = true;
        for step in 0..folds {
            let (r, c) = p.current_dims();
            let op = if step + 1 == folds && r >= 2 && c >= 2 && rng.chance(0.6) {
                FoldOp::Diagonal {
                    corner: *rng.pick(&spatialkit_core::patterns::CORNERS),
                    legs: rng.int(2, r.min(c) as i64) as usize,
                }
            } else if (rng.chance(0.5) && r >= 2) || c < 2 {
                FoldOp::Horizontal { line: rng.int(1, (r6(r)) as i64) as usize }
            } else {
                FoldOp::Vertical { line: rng.int(1, (r6(c)) as i64) as usize }
            };
            match p.fold(op) {
                Ok(next) => p = next,
                Err(_) => {
                    fold_ok = false;
                    break;
                }
            }
        }
        if !fold_ok {
            continue;
        }
        let visible = p.visible_cells();
        if visible.is_empty() {
            continue;
        }
        let origin = p.region_origin();
        let punches = rng.int(1, 3).min(visible.len() as i64) as usize;
        let mut pts = Vec::new();
        let mut guard = 0;
        while pts.len() < punches && guard < 100 {
            guard += 1;
            let &(ar, ac) = rng.pick(&visible);
            let rel = (ar - origin.0, ac - origin.1);
            if !pts.contains(&rel) {
                pts.push(rel);
            }
        }
        let Ok(punched) = p.punch(&pts) else { continue };
        let unfolded = punched.unfold();
        assert_eq!(
            punched.refold_visible(&unfolded),
            punched.visible_holes(),
            "roundtrip failure at instance {done}"
        );
        done += 1;
    }
    println!("[criterion 4] PASS - 1000/1000 refold(unfold) roundtrips reproduced the punched layer");
}

fn r6(d: usize) -> usize {
    d.saturating_sub(1).max(1)
}

#[test]
fn criterion_05_net_universality_two_hundred_facemaps() {
    let mut rng = Rng::from_seed(5);
    let mut checked = 0u32;
    for _ in 0..200 {
        let cells: [PatternCell; 6] = std::array::from_fn(|_| {
            PatternCell::with_rotation(
                Pattern::Glyph { glyph: GLYPHS[rng.index(6)], mirrored: rng.chance(0.5) },
                rng.int(0, 3) as u8,
            )
        });
        let faces = FaceMap::new(cells);
        let pivot = fold_net(&canonical_net(PIVOT_NET), &faces).unwrap();
        for name in NET_NAMES {
            let cube = fold_net(&equivalent_net(name, &faces), &faces).unwrap();
            assert!(cube.rotation_equivalent(&pivot), "{name:?} not rotation-equivalent");
            assert!(cube.identical(&pivot), "{name:?} equivalent net must refold to the pivot");
        }
        checked += 1;
    }
    // Cross-check the well-formed rotation-table entries.
    let q = canonical_net(NetName::N1413).rotation_of(FaceName::Front);
    assert!(q == 1 || q == 3);
    for net in [NetName::N1411, NetName::N1414, NetName::N2311, NetName::N222] {
        assert_eq!(canonical_net(net).rotation_of(FaceName::Front), 4 - q);
    }
    for net in [NetName::N1412, NetName::N1415, NetName::N2312, NetName::N33] {
        assert_eq!(canonical_net(net).rotation_of(FaceName::Front), 2);
    }
    for net in [NetName::N1414, NetName::N1415] {
        assert_eq!(canonical_net(net).rotation_of(FaceName::Back), q);
    }
    for net in [NetName::N2310, NetName::N2311, NetName::N2312, NetName::N33, NetName::N222] {
        assert_eq!(canonical_net(net).rotation_of(FaceName::Left), q);
    }
    assert_eq!(canonical_net(NetName::N222).rotation_of(FaceName::Top), q);
    println!(
        "[criterion 5] PASS - 11 nets x {checked} face maps fold to the pivot cube; rotation-table entries match"
    );
}

#[test]
fn criterion_06_simulator_conservation_thousand_sequences() {
    let mut rng = Rng::from_seed(6);
    for i in 0..1000 {
        let map = spatialkit_core::sims::arrows::ArrowMapState::random(4, 4, 4, &mut rng);
        let counts = map.color_counts();
        let (_, trace) = generate_sequence(&map, 4, None, &mut rng).expect("arrow sequence");
        for state in &trace {
            assert_eq!(state.color_counts(), counts, "arrow-map color drift at {i}");
        }
    }
    for i in 0..1000 {
        let scene = BlockScene::random((3, 3, 3), 6, &mut rng);
        let counts = scene.color_counts();
        let (_, trace) = generate_sequence(&scene, 4, None, &mut rng).expect("block sequence");
        for state in &trace {
            assert_eq!(state.color_counts(), counts, "block color drift at {i}");
            assert!(state.supported(), "support violated at {i}");
        }
        // settle is a fixed point on its own output.
        let settled = settle(trace.last().unwrap().cubes());
        assert_eq!(settle(&settled), settled);
    }
    println!(
        "[criterion 6] PASS - 1000 arrow-map and 1000 block sequences conserve colors and support; settle idempotent"
    );
}

#[test]
fn criterion_07_byte_determinism() {
    // Two binary runs of `generate --seed 42` produce byte-identical trees.
    let bin = env!("CARGO_BIN_EXE_spatialkit");
    let base = std::env::temp_dir().join(format!("spatialkit-det-{}", std::process::id()));
    let (a, b) = (base.join("a"), base.join("b"));
    let _ = std::fs::remove_dir_all(&base);
    for out in [&a, &b] {
        let status = std::process::Command::new(bin)
            .args([
                "generate",
                "--task",
                "cube_unfolding",
                "--level",
                "2",
                "--count",
                "6",
                "--seed",
                "42",
                "--out",
            ])
            .arg(out)
            .status()
            .expect("binary runs");
        assert!(status.success());
    }
    let mut files = 0;
    compare_trees(&a, &b, &mut files);
    assert!(files > 6, "expected a populated tree, compared {files} files");

    // Two rasterizations produce identical PNG bytes.
    let mut g = spatialkit_core::patterns::Grid2D::new(3, 3);
    g.set(
        1,
        1,
        Some(PatternCell::new(Pattern::Glyph { glyph: GLYPHS[0], mirrored: false })),
    );
    let doc = render_grid2d(&g, &RenderStyle::default());
    let p1 = rasterize(&doc, 768).unwrap();
    let p2 = rasterize(&doc, 768).unwrap();
    assert_eq!(p1, p2);
    let _ = std::fs::remove_dir_all(&base);
    println!("[criterion 7] PASS - generate trees byte-identical across runs ({files} files); PNG bytes identical");
}

fn compare_trees(a: &std::path::Path, b: &std::path::Path, files: &mut usize) {
    let mut names: Vec<String> = std::fs::read_dir(a)
        .unwrap()
        .flatten()
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    let mut names_b: Vec<String> = std::fs::read_dir(b)
        .unwrap()
        .flatten()
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    names_b.sort();
    assert_eq!(names, names_b, "directory listings differ under {a:?}");
    for name in names {
        let (pa, pb) = (a.join(&name), b.join(&name));
        if pa.is_dir() {
            compare_trees(&pa, &pb, files);
        } else {
            assert_eq!(std::fs::read(&pa).unwrap(), std::fs::read(&pb).unwrap(), "{pa:?}");
            *files += 1;
        }
    }
}

#[test]
fn criterion_08_random_baseline_quarter() {
    let suite = shared_suite();
    let manifest = read_manifest(&suite.root).unwrap();
    let mut rng = Rng::from_seed(8);
    let table = random_baseline(&manifest, 10_000, &mut rng);
    let overall = table.overall_accuracy();
    assert!(
        (overall - 25.0).abs() <= 2.0,
        "baseline overall {overall:.2}% outside 25 +/- 2"
    );
    // Per-task deviations, with the none-policy families flagged.
    let mut notes = Vec::new();
    for (task, levels) in &table.cells {
        for (level, cell) in levels {
            let dev = cell.accuracy() - 25.0;
            if dev.abs() > 1.0 {
                notes.push(format!("{task}/{level}: {:+.2}", dev));
            }
        }
    }
    println!(
        "[criterion 8] PASS - baseline overall {overall:.2}% (25 +/- 2); cells deviating by more than 1 point: {}",
        if notes.is_empty() { "none".to_string() } else { notes.join(", ") }
    );
}

#[test]
fn criterion_09_answer_balance() {
    let suite = shared_suite();
    let manifest = read_manifest(&suite.root).unwrap();
    let stats = dataset_stats(&suite.root, &manifest).unwrap();
    let pct = |l: &str| stats.answer_percent.get(l).copied().unwrap_or(0.0);
    let (a, b, c, d) = (pct("A"), pct("B"), pct("C"), pct("D"));
    for (name, v) in [("A", a), ("B", b), ("C", c)] {
        assert!((24.0..=30.0).contains(&v), "{name} at {v:.2}% outside 24-30");
    }
    assert!(d < a && d < b && d < c, "D must be strictly lowest, got {d:.2}%");
    for (v, target) in [(a, 26.5), (b, 27.5), (c, 28.5), (d, 17.5)] {
        assert!(
            (v - target).abs() <= 5.0,
            "letter at {v:.2}% further than 5 points from {target}"
        );
    }
    println!(
        "[criterion 9] PASS - answers A {a:.2}% / B {b:.2}% / C {c:.2}% / D {d:.2}%, D strictly lowest"
    );
}

#[test]
fn criterion_10_extraction_fixture_set() {
    #[derive(serde::Deserialize)]
    struct FixtureFile {
        fixtures: Vec<Fixture>,
    }
    #[derive(serde::Deserialize)]
    struct Fixture {
        name: String,
        response: String,
        expected: Option<String>,
    }
    let raw = include_str!("../../eval/tests/fixtures/extraction.json");
    let fixtures: FixtureFile = serde_json::from_str(raw).unwrap();
    assert!(fixtures.fixtures.len() >= 20);
    let mut correct = 0;
    for f in &fixtures.fixtures {
        let got = spatialkit_eval::extract::extract_answer(&f.response);
        let expected = f.expected.as_ref().map(|s| s.chars().next().unwrap());
        assert_eq!(got, expected, "fixture {}", f.name);
        correct += 1;
    }
    println!(
        "[criterion 10] PASS - extraction scored {correct}/{} on the committed fixture set",
        fixtures.fixtures.len()
    );
}

#[test]
fn criterion_11_offline_evaluation_with_stub() {
    let root = std::env::temp_dir().join(format!("spatialkit-stub-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&root);
    let cfg = GenConfig::default();
    // A small but multi-task set keeps this fast while covering image,
    // text and numeric options.
    let mut instances = Vec::new();
    for task in [
        spatialkit_forge::params::TaskId::CubeCounting,
        spatialkit_forge::params::TaskId::PaperFolding,
        spatialkit_forge::params::TaskId::ArrowMoving,
    ] {
        instances.extend(
            spatialkit_forge::generate_batch(task, 0, 11, 4, &cfg).expect("batch generates"),
        );
    }
    let manifest = write_dataset(&instances, &root, 11, &cfg).unwrap();
    let settings = RunSettings {
        model: "stub-model".into(),
        mode: PromptMode::Cot,
        concurrency: 4,
        retries: 1,
        backoff: std::time::Duration::from_millis(1),
        endpoint_label: "stub".into(),
    };
    let records = evaluate(&root, &manifest, &StubTransport, &settings).expect("offline run");
    assert_eq!(records.len(), manifest.instances.len());
    let table = score(&records, &manifest).expect("scores");
    // Independent recomputation of the overall accuracy.
    let answers: std::collections::BTreeMap<&str, char> =
        manifest.instances.iter().map(|e| (e.id.as_str(), e.answer)).collect();
    let recount = records
        .iter()
        .filter(|r| r.extracted == Some(answers[r.id.as_str()]))
        .count();
    let expected_overall = recount as f64 * 100.0 / records.len() as f64;
    assert!((table.overall_accuracy() - expected_overall).abs() < 1e-9);
    println!(
        "[criterion 11] PASS - stub evaluation of {} instances, overall {:.2}% equals the recomputation",
        records.len(),
        table.overall_accuracy()
    );
    let _ = std::fs::remove_dir_all(&root);
}
