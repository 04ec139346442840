//! Colored cubes under the discrete gravity rule.
//!
//! A cube moves one step along an axis. Moves are rejected when the target
//! leaves the box, has no support, or is the empty cell directly above the
//! mover. Empty targets relocate the cube, occupied ones swap the two, and
//! the whole scene settles afterwards.

use super::Simulate;
use crate::rng::Rng;
use crate::voxel::{settle, CellCoord};
use serde::{Deserialize, Serialize};

pub const BLOCK_DIRS: [[i32; 3]; 6] = [
    [1, 0, 0],
    [-1, 0, 0],
    [0, 1, 0],
    [0, -1, 0],
    [0, 0, 1],
    [0, 0, -1],
];

pub fn dir_label(dir: [i32; 3]) -> &'static str {
    match dir {
        [1, 0, 0] => "+x",
        [-1, 0, 0] => "-x",
        [0, 1, 0] => "+y",
        [0, -1, 0] => "-y",
        [0, 0, 1] => "up",
        [0, 0, -1] => "down",
        _ => "?",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockMove {
    pub from: CellCoord,
    pub dir: [i32; 3],
}

/// Scene of uniquely positioned colored cubes, kept in (z, y, x) order and
/// supported after every public transition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockScene {
    pub dims: (usize, usize, usize),
    cubes: Vec<(CellCoord, u8)>,
}

impl BlockScene {
    pub fn new(dims: (usize, usize, usize), cubes: Vec<(CellCoord, u8)>) -> Self {
        let mut cubes = cubes;
        cubes.sort_by_key(|(c, _)| (c.z, c.y, c.x));
        let scene = BlockScene { dims, cubes };
        debug_assert!(scene.distinct_positions());
        scene
    }

    /// Random supported scene colored from `colors` distinct ids, at least
    /// two cubes.
    pub fn random(dims: (usize, usize, usize), colors: u8, rng: &mut Rng) -> Self {
        loop {
            let grid = crate::voxel::create_supported_stack(dims, 0.5, rng);
            let cells = grid.cells();
            if cells.len() < 2 || cells.len() > colors as usize {
                continue;
            }
            // Distinct colors so move descriptions are unambiguous.
            let mut palette: Vec<u8> = (0..colors).collect();
            rng.shuffle(&mut palette);
            let cubes = cells
                .iter()
                .zip(palette.iter())
                .map(|(&c, &col)| (c, col))
                .collect();
            return BlockScene::new(dims, cubes);
        }
    }

    fn distinct_positions(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.cubes.iter().all(|(c, _)| seen.insert(*c))
    }

    pub fn cubes(&self) -> &[(CellCoord, u8)] {
        &self.cubes
    }

    pub fn occupied(&self, c: CellCoord) -> bool {
        self.cubes.iter().any(|(p, _)| *p == c)
    }

    pub fn color_at(&self, c: CellCoord) -> Option<u8> {
        self.cubes.iter().find(|(p, _)| *p == c).map(|(_, col)| *col)
    }

    pub fn supported(&self) -> bool {
        self.cubes
            .iter()
            .all(|(c, _)| c.z == 0 || self.occupied(CellCoord::new(c.x, c.y, c.z - 1)))
    }

    pub fn color_counts(&self) -> Vec<(u8, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for (_, col) in &self.cubes {
            *counts.entry(*col).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }

    fn offset(&self, c: CellCoord, dir: [i32; 3]) -> Option<CellCoord> {
        let (x, y, z) = (c.x as i32 + dir[0], c.y as i32 + dir[1], c.z as i32 + dir[2]);
        if x < 0 || y < 0 || z < 0 {
            return None;
        }
        let (x, y, z) = (x as usize, y as usize, z as usize);
        (x < self.dims.0 && y < self.dims.1 && z < self.dims.2)
            .then_some(CellCoord::new(x, y, z))
    }

    fn has_support(&self, c: CellCoord) -> bool {
        c.z == 0 || self.occupied(CellCoord::new(c.x, c.y, c.z - 1))
    }

    /// Valid moves in deterministic (cube order, direction order).
    pub fn possible_moves(&self) -> Vec<BlockMove> {
        let mut out = Vec::new();
        for (c, _) in &self.cubes {
            for dir in BLOCK_DIRS {
                if self.check_move(*c, dir) {
                    out.push(BlockMove { from: *c, dir });
                }
            }
        }
        out
    }

    fn check_move(&self, from: CellCoord, dir: [i32; 3]) -> bool {
        if !self.occupied(from) {
            return false;
        }
        let Some(to) = self.offset(from, dir) else {
            return false;
        };
        if !self.has_support(to) {
            return false;
        }
        // Lifting a cube into the empty cell straight above itself would
        // just drop back; rejected outright.
        if !self.occupied(to) && dir == [0, 0, 1] {
            return false;
        }
        true
    }
}

/// One move plus the settle pass; `None` when the move is rejected.
pub fn block_move(scene: &BlockScene, from: CellCoord, dir: [i32; 3]) -> Option<BlockScene> {
    if !scene.check_move(from, dir) {
        return None;
    }
    let to = scene.offset(from, dir).unwrap();
    let mut cubes = scene.cubes.clone();
    if scene.occupied(to) {
        for (c, _) in cubes.iter_mut() {
            if *c == from {
                *c = to;
            } else if *c == to {
                *c = from;
            }
        }
    } else {
        for (c, _) in cubes.iter_mut() {
            if *c == from {
                *c = to;
            }
        }
    }
    Some(BlockScene::new(scene.dims, settle(&cubes)))
}

impl Simulate for BlockScene {
    type Op = BlockMove;

    fn sample_op(&self, rng: &mut Rng) -> Option<(BlockMove, Self)> {
        let moves = self.possible_moves();
        if moves.is_empty() {
            return None;
        }
        let mv = *rng.pick(&moves);
        block_move(self, mv.from, mv.dir).map(|next| (mv, next))
    }

    fn digest(&self) -> String {
        let mut s = format!("blocks:{}x{}x{}", self.dims.0, self.dims.1, self.dims.2);
        for (c, col) in &self.cubes {
            s.push_str(&format!(";{},{},{}:c{col}", c.x, c.y, c.z));
        }
        s
    }
}
