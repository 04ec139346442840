//! Cross-module invariants, property-style.

use proptest::prelude::*;
use spatialkit_core::patterns::{
    flip_grid, rotate_grid, FlipAxis, Grid2D, Pattern, PatternCell,
};
use spatialkit_core::rng::Rng;
use spatialkit_core::sims::blocks::BlockScene;
use spatialkit_core::sims::paper::{FoldOp, PaperState};
use spatialkit_core::sims::{generate_sequence, Simulate};
use spatialkit_core::voxel::{
    connect_isolated_regions, count_bounds, create_pyramid_stack, create_supported_stack,
    project_silhouette, rotate_stack, settle, CellCoord, ViewAxis, AXES,
};

#[test]
fn generated_stacks_always_supported() {
    for seed in 0..200 {
        let mut rng = Rng::from_seed(seed);
        let g = create_supported_stack((4, 4, 4), 0.5, &mut rng);
        assert!(g.supported(), "seed {seed}");
        let p = create_pyramid_stack((4, 4, 3), &mut rng);
        assert!(p.supported(), "pyramid seed {seed}");
    }
}

#[test]
fn connect_never_removes_and_is_idempotent() {
    for seed in 0..100 {
        let mut rng = Rng::from_seed(1000 + seed);
        let g = create_supported_stack((4, 4, 2), 0.5, &mut rng);
        if g.cells().iter().all(|c| c.z != 0) {
            continue;
        }
        let once = connect_isolated_regions(&g);
        for c in g.cells() {
            assert!(once.get(c));
        }
        assert_eq!(connect_isolated_regions(&once), once);
    }
}

#[test]
fn rotation_count_and_identity() {
    for seed in 0..50 {
        let mut rng = Rng::from_seed(2000 + seed);
        let g = create_supported_stack((3, 4, 2), 0.6, &mut rng);
        for axis in AXES {
            assert_eq!(rotate_stack(&g, axis, 2).count(), g.count());
            let back = rotate_stack(&rotate_stack(&g, axis, 1), axis, 3);
            assert_eq!(back, g);
        }
    }
}

#[test]
fn count_bounds_bracket_generated_stacks() {
    let mut checked = 0;
    for seed in 0..300 {
        let mut rng = Rng::from_seed(3000 + seed);
        let g = connect_isolated_regions(&create_supported_stack((3, 3, 3), 0.5, &mut rng));
        if g.is_empty() || g.cells().iter().all(|c| c.z != 0) {
            continue;
        }
        let front = project_silhouette(&g, ViewAxis::Front);
        let top = project_silhouette(&g, ViewAxis::Top);
        let left = project_silhouette(&g, ViewAxis::Left);
        let b2 = count_bounds(&front, &top, None).unwrap();
        let b3 = count_bounds(&front, &top, Some(&left)).unwrap();
        let n = g.count();
        assert!(b2.min_count <= n && n <= b2.max_count, "2-view seed {seed}");
        assert!(b3.min_count <= n && n <= b3.max_count, "3-view seed {seed}");
        assert!(b3.min_count >= b2.min_count);
        assert!(b3.max_count <= b2.max_count);
        checked += 1;
    }
    assert!(checked > 200);
}

#[test]
fn settle_is_idempotent_on_random_scenes() {
    for seed in 0..100 {
        let mut rng = Rng::from_seed(4000 + seed);
        let mut scene: Vec<(CellCoord, u8)> = Vec::new();
        for _ in 0..6 {
            let c = CellCoord::new(
                rng.index(3),
                rng.index(3),
                rng.index(4),
            );
            if !scene.iter().any(|(p, _)| *p == c) {
                scene.push((c, rng.index(6) as u8));
            }
        }
        let once = settle(&scene);
        assert_eq!(settle(&once), once);
    }
}

/// Refold roundtrip over random fold/punch programs; the acceptance suite
/// runs the full 1,000-instance version.
#[test]
fn paper_roundtrip_random_instances() {
    let mut rng = Rng::from_seed(7);
    let mut done = 0;
    while done < 250 {
        let rows = rng.int(3, 6) as usize;
        let cols = rng.int(3, 6) as usize;
        let folds = rng.int(1, 3) as usize;
        let mut p = PaperState::new(rows, cols);
        for step in 0..folds {
            let (r, c) = p.current_dims();
            let op = if step + 1 == folds && r >= 2 && c >= 2 && rng.chance(0.5) {
                let corners = spatialkit_core::patterns::CORNERS;
                FoldOp::Diagonal {
                    corner: *rng.pick(&corners),
                    legs: rng.int(2, r.min(c) as i64) as usize,
                }
            } else if rng.chance(0.5) && r >= 2 {
                FoldOp::Horizontal { line: rng.int(1, r as i64 - 1) as usize }
            } else if c >= 2 {
                FoldOp::Vertical { line: rng.int(1, c as i64 - 1) as usize }
            } else {
                FoldOp::Horizontal { line: 1 }
            };
            p = p.fold(op).unwrap();
        }
        let visible = p.visible_cells();
        let origin = p.region_origin();
        let punches = rng.int(1, 3).min(visible.len() as i64) as usize;
        let mut pts: Vec<(usize, usize)> = Vec::new();
        while pts.len() < punches {
            let &(ar, ac) = rng.pick(&visible);
            let rel = (ar - origin.0, ac - origin.1);
            if !pts.contains(&rel) {
                pts.push(rel);
            }
        }
        let punched = match p.punch(&pts) {
            Ok(q) => q,
            Err(_) => continue,
        };
        let unfolded = punched.unfold();
        assert_eq!(
            punched.refold_visible(&unfolded),
            punched.visible_holes(),
            "rows {rows} cols {cols} folds {folds}"
        );
        done += 1;
    }
}

#[test]
fn block_sequences_conserve_and_stay_supported() {
    let mut rng = Rng::from_seed(77);
    for _ in 0..50 {
        let scene = BlockScene::random((3, 3, 3), 6, &mut rng);
        let counts = scene.color_counts();
        let (ops, trace) = generate_sequence(&scene, 5, None, &mut rng).unwrap();
        assert_eq!(ops.len(), 5);
        for state in &trace {
            assert!(state.supported());
            assert_eq!(state.color_counts(), counts);
        }
        // Replay determinism: applying the ops again gives the same digests.
        let mut replay = trace[0].clone();
        for (op, expect) in ops.iter().zip(trace.iter().skip(1)) {
            replay = spatialkit_core::sims::blocks::block_move(&replay, op.from, op.dir).unwrap();
            assert_eq!(replay.digest(), expect.digest());
        }
    }
}

fn arb_cell() -> impl Strategy<Value = PatternCell> {
    prop_oneof![
        (0u8..6).prop_map(|c| PatternCell::new(Pattern::Solid(c))),
        ((0u8..6), any::<bool>(), 0u8..4).prop_map(|(g, m, r)| {
            let glyph = spatialkit_core::patterns::GLYPHS[g as usize];
            PatternCell::with_rotation(Pattern::Glyph { glyph, mirrored: m }, r)
        }),
    ]
}

fn arb_grid() -> impl Strategy<Value = Grid2D> {
    (1usize..4, 1usize..4).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(proptest::option::of(arb_cell()), rows * cols).prop_map(
            move |cells| {
                let mut g = Grid2D::new(rows, cols);
                for (i, c) in cells.into_iter().enumerate() {
                    g.set(i / cols, i % cols, c);
                }
                g
            },
        )
    })
}

proptest! {
    /// Rotations compose additively modulo four.
    #[test]
    fn rotation_composition(g in arb_grid(), a in 0u8..4, b in 0u8..4) {
        let lhs = rotate_grid(&rotate_grid(&g, a), b);
        let rhs = rotate_grid(&g, (a + b) % 4);
        prop_assert_eq!(lhs.content_key(), rhs.content_key());
    }

    /// Flips are involutions and flip-conjugation inverts rotations: the
    /// dihedral-group relation f r f = r^-1.
    #[test]
    fn dihedral_relations(g in arb_grid(), axis_h in any::<bool>()) {
        let axis = if axis_h { FlipAxis::Horizontal } else { FlipAxis::Vertical };
        prop_assert_eq!(flip_grid(&flip_grid(&g, axis), axis).content_key(), g.content_key());
        let frf = flip_grid(&rotate_grid(&flip_grid(&g, axis), 1), axis);
        let r_inv = rotate_grid(&g, 3);
        prop_assert_eq!(frf.content_key(), r_inv.content_key());
    }

    /// A mirrored glyph never equals any rotation of the unmirrored glyph.
    #[test]
    fn mirror_never_in_rotation_orbit(r0 in 0u8..4, gi in 0u8..6) {
        let glyph = spatialkit_core::patterns::GLYPHS[gi as usize];
        let mut g = Grid2D::new(1, 1);
        g.set(0, 0, Some(PatternCell::with_rotation(Pattern::Glyph { glyph, mirrored: false }, r0)));
        let f = flip_grid(&g, FlipAxis::Horizontal);
        for k in 0..4 {
            prop_assert_ne!(rotate_grid(&g, k).content_key(), f.content_key());
        }
    }
}

/// All 11 nets against 200 random face maps fold to rotation-equivalent
/// cubes (the acceptance gate re-runs this at full scale).
#[test]
fn nets_universal_on_random_facemaps() {
    use spatialkit_core::patterns::*;
    let mut rng = Rng::from_seed(99);
    for _ in 0..40 {
        let cells: [PatternCell; 6] = std::array::from_fn(|_| {
            let glyph = GLYPHS[rng.index(6)];
            PatternCell::with_rotation(
                Pattern::Glyph { glyph, mirrored: rng.chance(0.5) },
                rng.int(0, 3) as u8,
            )
        });
        let faces = FaceMap::new(cells);
        let pivot = fold_net(&canonical_net(PIVOT_NET), &faces).unwrap();
        for name in NET_NAMES {
            let cube = fold_net(&equivalent_net(name, &faces), &faces).unwrap();
            assert!(cube.identical(&pivot), "{name:?}");
        }
    }
}
