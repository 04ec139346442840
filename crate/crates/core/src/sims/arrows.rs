//! Ego-centric arrow movement, single and multi-arrow.
//!
//! Directions index [(0,1), (1,0), (0,-1), (-1,0)] as (dx, dy) with y up.
//! Relative moves resolve against the mover's heading; the arrow reorients
//! to its movement direction afterwards. On the multi-arrow map an occupied
//! destination swaps the two arrows, the displaced one turning as if it had
//! itself moved along the negated vector.

use super::Simulate;
use crate::rng::Rng;
use serde::{Deserialize, Serialize};

/// Heading vectors indexed by orientation id: up, right, down, left.
pub const DIRECTIONS: [(i32, i32); 4] = [(0, 1), (1, 0), (0, -1), (-1, 0)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelDir {
    Forward,
    Backward,
    Left,
    Right,
}

pub const REL_DIRS: [RelDir; 4] = [RelDir::Forward, RelDir::Backward, RelDir::Left, RelDir::Right];

impl RelDir {
    pub fn label(self) -> &'static str {
        match self {
            RelDir::Forward => "forward",
            RelDir::Backward => "backward",
            RelDir::Left => "left",
            RelDir::Right => "right",
        }
    }
}

/// Movement vector of a relative direction for an arrow heading `orient`.
pub fn move_vector(orient: u8, rel: RelDir) -> (i32, i32) {
    let fwd = DIRECTIONS[orient as usize % 4];
    match rel {
        RelDir::Forward => fwd,
        RelDir::Backward => (-fwd.0, -fwd.1),
        RelDir::Left => DIRECTIONS[(orient as usize + 3) % 4],
        RelDir::Right => DIRECTIONS[(orient as usize + 1) % 4],
    }
}

/// Post-move heading: forward keeps it, backward flips it, left/right turn.
pub fn update_orient(orient: u8, rel: RelDir) -> u8 {
    match rel {
        RelDir::Forward => orient % 4,
        RelDir::Backward => (orient + 2) % 4,
        RelDir::Left => (orient + 3) % 4,
        RelDir::Right => (orient + 1) % 4,
    }
}

/// The relative direction whose movement vector equals `vec` for a heading.
pub fn rel_dir_of_vector(orient: u8, vec: (i32, i32)) -> Option<RelDir> {
    REL_DIRS.into_iter().find(|&rel| move_vector(orient, rel) == vec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowMove {
    pub rel: RelDir,
    pub steps: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleArrowState {
    pub width: usize,
    pub height: usize,
    pub pos: (i32, i32),
    pub orient: u8,
}

impl SingleArrowState {
    pub fn new(width: usize, height: usize, pos: (i32, i32), orient: u8) -> Self {
        SingleArrowState { width, height, pos, orient: orient % 4 }
    }

    fn in_bounds(&self, pos: (i32, i32)) -> bool {
        pos.0 >= 0 && pos.1 >= 0 && (pos.0 as usize) < self.width && (pos.1 as usize) < self.height
    }

    /// Largest step count a generator will request.
    pub fn max_step(&self) -> u32 {
        self.width.min(self.height) as u32
    }
}

/// Relative move; `None` when the destination leaves the grid.
pub fn arrow_move(state: &SingleArrowState, rel: RelDir, steps: u32) -> Option<SingleArrowState> {
    let v = move_vector(state.orient, rel);
    let dest = (state.pos.0 + v.0 * steps as i32, state.pos.1 + v.1 * steps as i32);
    if !state.in_bounds(dest) {
        return None;
    }
    Some(SingleArrowState {
        pos: dest,
        orient: update_orient(state.orient, rel),
        ..*state
    })
}

impl Simulate for SingleArrowState {
    type Op = ArrowMove;

    fn sample_op(&self, rng: &mut Rng) -> Option<(ArrowMove, Self)> {
        let rel = *rng.pick(&REL_DIRS);
        let steps = rng.int(1, self.max_step() as i64) as u32;
        arrow_move(self, rel, steps).map(|next| (ArrowMove { rel, steps }, next))
    }

    fn digest(&self) -> String {
        format!("arrow:{}x{};{},{};o{}", self.width, self.height, self.pos.0, self.pos.1, self.orient)
    }
}

/// Grid of colored arrows; cells hold (color id, orientation id).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowMapState {
    pub width: usize,
    pub height: usize,
    cells: Vec<Option<(u8, u8)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowMapMove {
    pub pos: (i32, i32),
    pub rel: RelDir,
    pub steps: u32,
}

impl ArrowMapState {
    pub fn new(width: usize, height: usize) -> Self {
        ArrowMapState { width, height, cells: vec![None; width * height] }
    }

    /// Random fill: each cell holds an arrow with probability one half.
    /// Resamples until at least one arrow exists.
    pub fn random(width: usize, height: usize, colors: u8, rng: &mut Rng) -> Self {
        loop {
            let mut s = ArrowMapState::new(width, height);
            for y in 0..height {
                for x in 0..width {
                    if rng.chance(0.5) {
                        let color = rng.int(0, colors as i64 - 1) as u8;
                        let orient = rng.int(0, 3) as u8;
                        s.set((x as i32, y as i32), Some((color, orient)));
                    }
                }
            }
            if s.arrow_positions().len() >= 2 {
                return s;
            }
        }
    }

    fn idx(&self, pos: (i32, i32)) -> usize {
        pos.1 as usize * self.width + pos.0 as usize
    }

    pub fn get(&self, pos: (i32, i32)) -> Option<(u8, u8)> {
        self.in_bounds(pos).then(|| self.cells[self.idx(pos)]).flatten()
    }

    pub fn set(&mut self, pos: (i32, i32), v: Option<(u8, u8)>) {
        let i = self.idx(pos);
        self.cells[i] = v;
    }

    pub fn in_bounds(&self, pos: (i32, i32)) -> bool {
        pos.0 >= 0 && pos.1 >= 0 && (pos.0 as usize) < self.width && (pos.1 as usize) < self.height
    }

    /// Occupied positions in row-major order.
    pub fn arrow_positions(&self) -> Vec<(i32, i32)> {
        let mut out = Vec::new();
        for y in 0..self.height {
            for x in 0..self.width {
                let p = (x as i32, y as i32);
                if self.get(p).is_some() {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn max_step(&self) -> u32 {
        self.width.min(self.height) as u32
    }

    /// Multiset of colors; invariant under every move.
    pub fn color_counts(&self) -> Vec<(u8, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for cell in self.cells.iter().flatten() {
            *counts.entry(cell.0).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }
}

/// Move the arrow at `pos`. Empty destinations relocate it; occupied ones
/// swap, reorienting the displaced arrow by the relative direction whose
/// vector equals the negated movement. A move changing neither position nor
/// orientation is invalid, as is leaving the grid.
pub fn arrowmap_move(
    state: &ArrowMapState,
    pos: (i32, i32),
    rel: RelDir,
    steps: u32,
) -> Option<ArrowMapState> {
    let (color, orient) = state.get(pos)?;
    let v = move_vector(orient, rel);
    let dest = (pos.0 + v.0 * steps as i32, pos.1 + v.1 * steps as i32);
    if !state.in_bounds(dest) {
        return None;
    }
    let new_orient = update_orient(orient, rel);
    if dest == pos && new_orient == orient {
        return None;
    }
    let mut next = state.clone();
    match state.get(dest) {
        None => next.set(pos, None),
        Some((t_color, t_orient)) => {
            let back = (-v.0, -v.1);
            let t_rel = rel_dir_of_vector(t_orient, back)
                .expect("negated vector always matches one relative direction");
            next.set(pos, Some((t_color, update_orient(t_orient, t_rel))));
        }
    }
    next.set(dest, Some((color, new_orient)));
    Some(next)
}

impl Simulate for ArrowMapState {
    type Op = ArrowMapMove;

    fn sample_op(&self, rng: &mut Rng) -> Option<(ArrowMapMove, Self)> {
        let arrows = self.arrow_positions();
        if arrows.is_empty() {
            return None;
        }
        let pos = *rng.pick(&arrows);
        let rel = *rng.pick(&REL_DIRS);
        let steps = rng.int(1, self.max_step() as i64) as u32;
        arrowmap_move(self, pos, rel, steps).map(|next| (ArrowMapMove { pos, rel, steps }, next))
    }

    fn digest(&self) -> String {
        let mut s = format!("arrowmap:{}x{}", self.width, self.height);
        for y in 0..self.height {
            for x in 0..self.width {
                match self.get((x as i32, y as i32)) {
                    Some((c, o)) => s.push_str(&format!(";{x},{y}:c{c}o{o}")),
                    None => {}
                }
            }
        }
        s
    }
}
