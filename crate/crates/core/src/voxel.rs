//! Axis-aligned unit-cube stacks on a non-negative lattice.
//!
//! Every public constructor keeps the support invariant (a cube sits on the
//! ground or on another cube) and the generators additionally keep the base
//! layer 8-connected. All operations are pure: they take a grid, return a
//! grid.

use crate::rng::Rng;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VoxelError {
    /// Front/top/left views do not describe any stack; caller bug.
    #[error("inconsistent views: column {0} occupied in one view but not the other")]
    InconsistentViews(usize),
    #[error("split attempt budget exhausted")]
    SplitBudgetExhausted,
}

/// Lattice cell. Unit cube side = 1, indices are non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellCoord {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl CellCoord {
    pub fn new(x: usize, y: usize, z: usize) -> Self {
        CellCoord { x, y, z }
    }
}

/// Rotation axes for quarter-turn stack rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub const AXES: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

/// Orthographic view labels. Front looks along +y, left along +x,
/// right along -x, top straight down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViewAxis {
    Front,
    Top,
    Left,
    Right,
}

/// Boolean voxel tensor indexed `[z][y][x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OccupancyGrid {
    pub dims: (usize, usize, usize),
    occupied: Vec<bool>,
}

impl OccupancyGrid {
    pub fn new(dims: (usize, usize, usize)) -> Self {
        assert!(dims.0 > 0 && dims.1 > 0 && dims.2 > 0, "dims must be positive");
        OccupancyGrid {
            dims,
            occupied: vec![false; dims.0 * dims.1 * dims.2],
        }
    }

    pub fn from_cells(dims: (usize, usize, usize), cells: &[CellCoord]) -> Self {
        let mut g = OccupancyGrid::new(dims);
        for &c in cells {
            g.set(c, true);
        }
        g
    }

    fn idx(&self, c: CellCoord) -> usize {
        debug_assert!(c.x < self.dims.0 && c.y < self.dims.1 && c.z < self.dims.2);
        (c.z * self.dims.1 + c.y) * self.dims.0 + c.x
    }

    pub fn get(&self, c: CellCoord) -> bool {
        self.occupied[self.idx(c)]
    }

    /// Bounds-checked read; out-of-range is vacant.
    pub fn get_opt(&self, x: isize, y: isize, z: isize) -> bool {
        if x < 0 || y < 0 || z < 0 {
            return false;
        }
        let (x, y, z) = (x as usize, y as usize, z as usize);
        if x >= self.dims.0 || y >= self.dims.1 || z >= self.dims.2 {
            return false;
        }
        self.get(CellCoord::new(x, y, z))
    }

    pub fn set(&mut self, c: CellCoord, v: bool) {
        let i = self.idx(c);
        self.occupied[i] = v;
    }

    pub fn count(&self) -> usize {
        self.occupied.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    /// Occupied cells in ascending (z, y, x) order.
    pub fn cells(&self) -> Vec<CellCoord> {
        let mut out = Vec::new();
        for z in 0..self.dims.2 {
            for y in 0..self.dims.1 {
                for x in 0..self.dims.0 {
                    let c = CellCoord::new(x, y, z);
                    if self.get(c) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// True iff every occupied cell is on the ground or sits on another cube.
    pub fn supported(&self) -> bool {
        self.cells()
            .iter()
            .all(|c| c.z == 0 || self.get(CellCoord::new(c.x, c.y, c.z - 1)))
    }

    /// Trim to the tight bounding box of the occupied cells.
    pub fn shrink_to_content(&self) -> OccupancyGrid {
        let cells = self.cells();
        if cells.is_empty() {
            return OccupancyGrid::new((1, 1, 1));
        }
        let min = (
            cells.iter().map(|c| c.x).min().unwrap(),
            cells.iter().map(|c| c.y).min().unwrap(),
            cells.iter().map(|c| c.z).min().unwrap(),
        );
        let max = (
            cells.iter().map(|c| c.x).max().unwrap(),
            cells.iter().map(|c| c.y).max().unwrap(),
            cells.iter().map(|c| c.z).max().unwrap(),
        );
        let shifted: Vec<CellCoord> = cells
            .iter()
            .map(|c| CellCoord::new(c.x - min.0, c.y - min.1, c.z - min.2))
            .collect();
        OccupancyGrid::from_cells((max.0 - min.0 + 1, max.1 - min.1 + 1, max.2 - min.2 + 1), &shifted)
    }
}

/// One orthographic silhouette: `grid[row][col]`, row 0 at the ground for
/// side views (front/left/right) and at y = 0 for the top view.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewSilhouette {
    pub axis: ViewAxis,
    pub grid: Vec<Vec<bool>>,
}

impl ViewSilhouette {
    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn cols(&self) -> usize {
        self.grid.first().map_or(0, |r| r.len())
    }

    /// Per-column filled-cell counts.
    pub fn column_sums(&self) -> Vec<usize> {
        let mut sums = vec![0usize; self.cols()];
        for row in &self.grid {
            for (c, &v) in row.iter().enumerate() {
                if v {
                    sums[c] += 1;
                }
            }
        }
        sums
    }

    /// Per-row filled-cell counts.
    pub fn row_sums(&self) -> Vec<usize> {
        self.grid
            .iter()
            .map(|row| row.iter().filter(|&&v| v).count())
            .collect()
    }
}

/// Cube-count bracket derived from orthographic views.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountBounds {
    pub min_count: usize,
    pub max_count: usize,
}

/// Bottom-up sweep placing a cube with `fill_probability` wherever the cell
/// below (or the ground) supports it. Empty output is legal; callers retry.
pub fn create_supported_stack(
    dims: (usize, usize, usize),
    fill_probability: f64,
    rng: &mut Rng,
) -> OccupancyGrid {
    let mut g = OccupancyGrid::new(dims);
    for z in 0..dims.2 {
        for y in 0..dims.1 {
            for x in 0..dims.0 {
                let below = z == 0 || g.get(CellCoord::new(x, y, z - 1));
                if below && rng.chance(fill_probability) {
                    g.set(CellCoord::new(x, y, z), true);
                }
            }
        }
    }
    g
}

const BASE_DIRS_8: [(isize, isize); 8] = [
    (-1, 0),
    (1, 0),
    (0, -1),
    (0, 1),
    (-1, -1),
    (-1, 1),
    (1, -1),
    (1, 1),
];

/// 8-connected regions of the z = 0 layer, in deterministic discovery order.
fn base_regions(g: &OccupancyGrid) -> Vec<Vec<(usize, usize)>> {
    let (xs, ys) = (g.dims.0, g.dims.1);
    let mut visited = vec![vec![false; xs]; ys];
    let mut regions = Vec::new();
    for y in 0..ys {
        for x in 0..xs {
            if visited[y][x] || !g.get(CellCoord::new(x, y, 0)) {
                continue;
            }
            let mut region = Vec::new();
            let mut queue = VecDeque::new();
            visited[y][x] = true;
            queue.push_back((x, y));
            while let Some((cx, cy)) = queue.pop_front() {
                region.push((cx, cy));
                for (dx, dy) in BASE_DIRS_8 {
                    let (nx, ny) = (cx as isize + dx, cy as isize + dy);
                    if nx < 0 || ny < 0 || nx as usize >= xs || ny as usize >= ys {
                        continue;
                    }
                    let (nx, ny) = (nx as usize, ny as usize);
                    if !visited[ny][nx] && g.get(CellCoord::new(nx, ny, 0)) {
                        visited[ny][nx] = true;
                        queue.push_back((nx, ny));
                    }
                }
            }
            regions.push(region);
        }
    }
    regions
}

/// Bridges the base-layer regions into one 8-connected region by stepping
/// diagonally while both coordinates differ, then along the axis, placing a
/// cube on every vacant cell crossed. Regions are merged pairwise in
/// discovery order. Never removes cubes; idempotent.
pub fn connect_isolated_regions(grid: &OccupancyGrid) -> OccupancyGrid {
    let mut g = grid.clone();
    let regions = base_regions(&g);
    if regions.len() <= 1 {
        return g;
    }
    for i in 0..regions.len() - 1 {
        // Closest pair by L1; ties resolved by scan order.
        let mut best = (usize::MAX, (0usize, 0usize), (0usize, 0usize));
        for &(x1, y1) in &regions[i] {
            for &(x2, y2) in &regions[i + 1] {
                let d = x1.abs_diff(x2) + y1.abs_diff(y2);
                if d < best.0 {
                    best = (d, (x1, y1), (x2, y2));
                }
            }
        }
        let (_, (mut x, mut y), (x2, y2)) = best;
        while x != x2 || y != y2 {
            if x != x2 && y != y2 {
                x = if x < x2 { x + 1 } else { x - 1 };
                y = if y < y2 { y + 1 } else { y - 1 };
            } else if x != x2 {
                x = if x < x2 { x + 1 } else { x - 1 };
            } else {
                y = if y < y2 { y + 1 } else { y - 1 };
            }
            let c = CellCoord::new(x, y, 0);
            if !g.get(c) {
                g.set(c, true);
            }
        }
    }
    g
}

/// Integer quarter-turn rotation, re-translated into the non-negative
/// octant by the rotated dims box so composing turns stays exact.
pub fn rotate_stack(grid: &OccupancyGrid, axis: Axis, quarter_turns: u8) -> OccupancyGrid {
    assert!((1..=3).contains(&quarter_turns));
    let mut cells: Vec<(usize, usize, usize)> =
        grid.cells().iter().map(|c| (c.x, c.y, c.z)).collect();
    let mut dims = grid.dims;
    for _ in 0..quarter_turns {
        // Right-handed quarter turn about each axis, then the shift that
        // maps the rotated box corner back to the origin.
        let (xs, ys, zs) = dims;
        cells = cells
            .into_iter()
            .map(|(x, y, z)| match axis {
                Axis::X => (x, zs - 1 - z, y),
                Axis::Y => (z, y, xs - 1 - x),
                Axis::Z => (ys - 1 - y, x, z),
            })
            .collect();
        dims = match axis {
            Axis::X => (xs, zs, ys),
            Axis::Y => (zs, ys, xs),
            Axis::Z => (ys, xs, zs),
        };
    }
    let mut out = OccupancyGrid::new(dims);
    for (x, y, z) in cells {
        out.set(CellCoord::new(x, y, z), true);
    }
    out
}

/// Direct voxel projection; a silhouette cell is true iff any occupied voxel
/// projects onto it. Left and right are mirror images along the depth axis.
pub fn project_silhouette(grid: &OccupancyGrid, view: ViewAxis) -> ViewSilhouette {
    let (xs, ys, zs) = grid.dims;
    let grid2d = match view {
        ViewAxis::Front => {
            let mut m = vec![vec![false; xs]; zs];
            for c in grid.cells() {
                m[c.z][c.x] = true;
            }
            m
        }
        ViewAxis::Top => {
            let mut m = vec![vec![false; xs]; ys];
            for c in grid.cells() {
                m[c.y][c.x] = true;
            }
            m
        }
        ViewAxis::Left => {
            let mut m = vec![vec![false; ys]; zs];
            for c in grid.cells() {
                m[c.z][c.y] = true;
            }
            m
        }
        ViewAxis::Right => {
            let mut m = vec![vec![false; ys]; zs];
            for c in grid.cells() {
                m[c.z][ys - 1 - c.y] = true;
            }
            m
        }
    };
    ViewSilhouette { axis: view, grid: grid2d }
}

/// Cube-count bounds from two or three views.
///
/// Two views: max = sum_x F[x]*T[x], min = sum_x (T[x] - 1 + F[x]).
/// Three views: max = sum over occupied top cells of min(F[col], L[row]),
/// min = max(sum_y (Trow[y] - 1 + L[y]), two-view min).
pub fn count_bounds(
    front: &ViewSilhouette,
    top: &ViewSilhouette,
    left: Option<&ViewSilhouette>,
) -> Result<CountBounds, VoxelError> {
    let f = front.column_sums();
    let t = top.column_sums();
    if f.len() != t.len() {
        return Err(VoxelError::InconsistentViews(0));
    }
    for (x, (&fc, &tc)) in f.iter().zip(t.iter()).enumerate() {
        if (fc > 0) != (tc > 0) {
            return Err(VoxelError::InconsistentViews(x));
        }
    }
    let max_2view: usize = f.iter().zip(t.iter()).map(|(&fc, &tc)| fc * tc).sum();
    let min_2view: usize = f
        .iter()
        .zip(t.iter())
        .filter(|&(_, &tc)| tc > 0)
        .map(|(&fc, &tc)| tc - 1 + fc)
        .sum();

    let Some(left) = left else {
        return Ok(CountBounds { min_count: min_2view, max_count: max_2view });
    };

    let l = left.column_sums();
    let t_rows = top.row_sums();
    if l.len() != t_rows.len() {
        return Err(VoxelError::InconsistentViews(0));
    }
    for (y, (&lc, &tr)) in l.iter().zip(t_rows.iter()).enumerate() {
        if (lc > 0) != (tr > 0) {
            return Err(VoxelError::InconsistentViews(y));
        }
    }
    let mut max_3view = 0usize;
    for (y, row) in top.grid.iter().enumerate() {
        for (x, &occ) in row.iter().enumerate() {
            if occ {
                max_3view += f[x].min(l[y]);
            }
        }
    }
    let min_left: usize = t_rows
        .iter()
        .zip(l.iter())
        .filter(|&(&tr, _)| tr > 0)
        .map(|(&tr, &lc)| tr - 1 + lc)
        .sum();
    Ok(CountBounds {
        min_count: min_left.max(min_2view),
        max_count: max_3view,
    })
}

pub const DIRS_6: [(isize, isize, isize); 6] = [
    (-1, 0, 0),
    (1, 0, 0),
    (0, -1, 0),
    (0, 1, 0),
    (0, 0, -1),
    (0, 0, 1),
];

/// True iff the cell set is 6-connected (empty sets count as connected).
pub fn is_connected_6(cells: &[CellCoord]) -> bool {
    if cells.len() <= 1 {
        return true;
    }
    let set: std::collections::HashSet<CellCoord> = cells.iter().copied().collect();
    let mut visited = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    visited.insert(cells[0]);
    queue.push_back(cells[0]);
    while let Some(c) = queue.pop_front() {
        for (dx, dy, dz) in DIRS_6 {
            let (nx, ny, nz) = (c.x as isize + dx, c.y as isize + dy, c.z as isize + dz);
            if nx < 0 || ny < 0 || nz < 0 {
                continue;
            }
            let n = CellCoord::new(nx as usize, ny as usize, nz as usize);
            if set.contains(&n) && visited.insert(n) {
                queue.push_back(n);
            }
        }
    }
    visited.len() == set.len()
}

fn region_grow(cells: &[CellCoord], max_cubes: usize, rng: &mut Rng) -> Vec<CellCoord> {
    let set: std::collections::HashSet<CellCoord> = cells.iter().copied().collect();
    let start = *rng.pick(cells);
    let mut part: Vec<CellCoord> = Vec::new();
    let mut in_part = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(c) = queue.pop_front() {
        if part.len() >= max_cubes {
            break;
        }
        if !in_part.insert(c) {
            continue;
        }
        part.push(c);
        for (dx, dy, dz) in DIRS_6 {
            let (nx, ny, nz) = (c.x as isize + dx, c.y as isize + dy, c.z as isize + dz);
            if nx < 0 || ny < 0 || nz < 0 {
                continue;
            }
            let n = CellCoord::new(nx as usize, ny as usize, nz as usize);
            if set.contains(&n) && !in_part.contains(&n) {
                queue.push_back(n);
            }
        }
    }
    part
}

const SPLIT_ATTEMPTS: usize = 64;

/// Region-growing split into 2 or 3 pairwise-disjoint 6-connected parts that
/// cover the stack, resampled until every part is connected. Parts come back
/// sorted by size ascending.
pub fn split_connected(
    grid: &OccupancyGrid,
    max_part_cubes: usize,
    parts: usize,
    rng: &mut Rng,
) -> Result<Vec<Vec<CellCoord>>, VoxelError> {
    assert!(parts == 2 || parts == 3);
    let all = grid.cells();
    assert!(!all.is_empty(), "split of an empty grid");
    debug_assert!(is_connected_6(&all), "split input must be 6-connected");

    for _ in 0..SPLIT_ATTEMPTS {
        let part1 = region_grow(&all, max_part_cubes, rng);
        let rest1: Vec<CellCoord> = all.iter().copied().filter(|c| !part1.contains(c)).collect();
        if rest1.is_empty() || !is_connected_6(&rest1) {
            continue;
        }
        let mut result = if parts == 2 {
            vec![part1, rest1]
        } else {
            let part2 = region_grow(&rest1, max_part_cubes, rng);
            let rest2: Vec<CellCoord> =
                rest1.iter().copied().filter(|c| !part2.contains(c)).collect();
            if rest2.is_empty() || !is_connected_6(&rest2) {
                continue;
            }
            vec![part1, part2, rest2]
        };
        if result.iter().any(|p| p.is_empty()) {
            continue;
        }
        for p in &mut result {
            p.sort();
        }
        result.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        return Ok(result);
    }
    Err(VoxelError::SplitBudgetExhausted)
}

/// Pyramid-like stack built in three phases: base rows with non-decreasing
/// run lengths, middle layers with runs bounded by the layer below, and a
/// random supported top layer.
pub fn create_pyramid_stack(dims: (usize, usize, usize), rng: &mut Rng) -> OccupancyGrid {
    let (xs, ys, zs) = dims;
    assert!(zs >= 2, "pyramid needs Z >= 2");
    let mut g = OccupancyGrid::new(dims);

    let mut num = 1usize;
    for y in 0..ys {
        num = rng.int(num as i64, (y + 2).min(xs) as i64) as usize;
        for x in 0..num {
            g.set(CellCoord::new(x, y, 0), true);
        }
    }

    for z in 1..zs.saturating_sub(1) {
        let mut num = 0usize;
        for y in 0..ys {
            let below: usize = (0..xs)
                .filter(|&x| g.get(CellCoord::new(x, y, z - 1)))
                .count();
            num = rng.int(num as i64, num.max(below) as i64) as usize;
            for x in 0..num {
                g.set(CellCoord::new(x, y, z), true);
            }
        }
    }

    let top = zs - 1;
    for y in 0..ys {
        for x in 0..xs {
            if g.get(CellCoord::new(x, y, top - 1)) && rng.chance(0.5) {
                g.set(CellCoord::new(x, y, top), true);
            }
        }
    }
    g
}

/// Drop unsupported cubes straight down, lowest first, so stacks compact
/// without reordering. Fixed point on supported scenes.
pub fn settle(scene: &[(CellCoord, u8)]) -> Vec<(CellCoord, u8)> {
    let mut items: Vec<(CellCoord, u8)> = scene.to_vec();
    items.sort_by_key(|(c, _)| (c.z, c.y, c.x));
    let mut placed: std::collections::HashSet<CellCoord> = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(items.len());
    for (c, color) in items {
        let mut z = c.z;
        while z > 0 && !placed.contains(&CellCoord::new(c.x, c.y, z - 1)) {
            z -= 1;
        }
        let landed = CellCoord::new(c.x, c.y, z);
        placed.insert(landed);
        out.push((landed, color));
    }
    out.sort_by_key(|(c, _)| (c.z, c.y, c.x));
    out
}
