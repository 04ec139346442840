//! 2D pattern grids, the pattern library, the 11 canonical cube nets and
//! hinge folding.
//!
//! Nets are folded generically: the six cells are walked from the anchor
//! cell (the leftmost cell of the middle row, which becomes the Bottom
//! face), each hinge rotating the neighbour's frame 90 degrees over the
//! shared edge. The hard-coded per-net rotation tables of the source
//! benchmark become validation fixtures in the tests rather than code.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("malformed net layout: {0}")]
    MalformedNet(String),
}

/// Names for the six cube faces. Front faces -y, Right faces +x, Top +z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FaceName {
    Top,
    Bottom,
    Left,
    Right,
    Front,
    Back,
}

pub const FACES: [FaceName; 6] = [
    FaceName::Top,
    FaceName::Bottom,
    FaceName::Left,
    FaceName::Right,
    FaceName::Front,
    FaceName::Back,
];

impl FaceName {
    pub fn index(self) -> usize {
        FACES.iter().position(|&f| f == self).unwrap()
    }

    pub fn normal(self) -> [i32; 3] {
        match self {
            FaceName::Top => [0, 0, 1],
            FaceName::Bottom => [0, 0, -1],
            FaceName::Left => [-1, 0, 0],
            FaceName::Right => [1, 0, 0],
            FaceName::Front => [0, -1, 0],
            FaceName::Back => [0, 1, 0],
        }
    }

    pub fn from_normal(n: [i32; 3]) -> Option<FaceName> {
        FACES.iter().copied().find(|f| f.normal() == n)
    }

    /// The unique face sharing no edge: the one with the opposite normal.
    pub fn opposite(self) -> FaceName {
        let n = self.normal();
        FaceName::from_normal([-n[0], -n[1], -n[2]]).unwrap()
    }

    pub fn label(self) -> &'static str {
        match self {
            FaceName::Top => "Top",
            FaceName::Bottom => "Bottom",
            FaceName::Left => "Left",
            FaceName::Right => "Right",
            FaceName::Front => "Front",
            FaceName::Back => "Back",
        }
    }
}

/// Face color slots; the render palette reserves index 0 for the red marker,
/// so color id k here maps to palette entry k + 1.
pub const COLOR_NAMES: [&str; 6] = ["blue", "green", "yellow", "orange", "purple", "cyan"];

/// Non-centrally-symmetric glyphs. Geometry lives in the renderer; here a
/// glyph is an identity plus its declared symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Glyph {
    Arrow,
    Ell,
    Flag,
    Hook,
    Step,
    Key,
}

pub const GLYPHS: [Glyph; 6] = [
    Glyph::Arrow,
    Glyph::Ell,
    Glyph::Flag,
    Glyph::Hook,
    Glyph::Step,
    Glyph::Key,
];

impl Glyph {
    pub fn label(self) -> &'static str {
        match self {
            Glyph::Arrow => "arrow",
            Glyph::Ell => "ell",
            Glyph::Flag => "flag",
            Glyph::Hook => "hook",
            Glyph::Step => "step",
            Glyph::Key => "key",
        }
    }
}

/// Rotational symmetry classes used for canonicalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    /// Invariant under every quarter turn (solid colors).
    Full,
    /// Invariant under 180 degrees only.
    Half,
    /// No rotational symmetry.
    Asymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pattern {
    Solid(u8),
    Glyph { glyph: Glyph, mirrored: bool },
    /// 3x3 colored-dot face, row-major color ids.
    Dots([u8; 9]),
}

impl Pattern {
    pub fn symmetry(self) -> Symmetry {
        match self {
            Pattern::Solid(_) => Symmetry::Full,
            Pattern::Glyph { .. } => Symmetry::Asymmetric,
            Pattern::Dots(d) => {
                let rot180: [u8; 9] = std::array::from_fn(|i| d[8 - i]);
                let rot90: [u8; 9] = std::array::from_fn(|i| {
                    let (r, c) = (i / 3, i % 3);
                    d[(2 - c) * 3 + r]
                });
                if rot90 == d {
                    Symmetry::Full
                } else if rot180 == d {
                    Symmetry::Half
                } else {
                    Symmetry::Asymmetric
                }
            }
        }
    }

    /// The pattern seen in a left-right mirror, at rotation zero.
    pub fn mirrored(self) -> Pattern {
        match self {
            Pattern::Solid(c) => Pattern::Solid(c),
            Pattern::Glyph { glyph, mirrored } => Pattern::Glyph { glyph, mirrored: !mirrored },
            Pattern::Dots(d) => Pattern::Dots(std::array::from_fn(|i| {
                let (r, c) = (i / 3, i % 3);
                d[r * 3 + (2 - c)]
            })),
        }
    }

    /// Stable identifier used in serialized instances and digests.
    pub fn id_string(self) -> String {
        match self {
            Pattern::Solid(c) => format!("solid:{}", COLOR_NAMES[c as usize]),
            Pattern::Glyph { glyph, mirrored } => {
                if mirrored {
                    format!("glyph:{}:m", glyph.label())
                } else {
                    format!("glyph:{}", glyph.label())
                }
            }
            Pattern::Dots(d) => {
                let s: String = d.iter().map(|&c| (b'a' + c) as char).collect();
                format!("dots:{s}")
            }
        }
    }
}

/// A pattern with an in-cell quarter-turn rotation (clockwise on screen).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternCell {
    pub pattern: Pattern,
    pub rotation: u8,
}

impl PatternCell {
    pub fn new(pattern: Pattern) -> Self {
        PatternCell { pattern, rotation: 0 }
    }

    pub fn with_rotation(pattern: Pattern, rotation: u8) -> Self {
        PatternCell { pattern, rotation: rotation % 4 }.canonical()
    }

    /// Fold the rotation through the pattern's symmetry group.
    pub fn canonical(self) -> PatternCell {
        let rotation = match self.pattern.symmetry() {
            Symmetry::Full => 0,
            Symmetry::Half => self.rotation % 2,
            Symmetry::Asymmetric => self.rotation % 4,
        };
        PatternCell { pattern: self.pattern, rotation }
    }

    pub fn rotated(self, quarter_turns: u8) -> PatternCell {
        PatternCell { pattern: self.pattern, rotation: (self.rotation + quarter_turns) % 4 }
            .canonical()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Corner {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

pub const CORNERS: [Corner; 4] =
    [Corner::TopLeft, Corner::TopRight, Corner::BottomLeft, Corner::BottomRight];

impl Corner {
    fn rotated_cw(self) -> Corner {
        match self {
            Corner::TopLeft => Corner::TopRight,
            Corner::TopRight => Corner::BottomRight,
            Corner::BottomRight => Corner::BottomLeft,
            Corner::BottomLeft => Corner::TopLeft,
        }
    }

    fn flipped(self, axis: FlipAxis) -> Corner {
        match (axis, self) {
            (FlipAxis::Horizontal, Corner::TopLeft) => Corner::TopRight,
            (FlipAxis::Horizontal, Corner::TopRight) => Corner::TopLeft,
            (FlipAxis::Horizontal, Corner::BottomLeft) => Corner::BottomRight,
            (FlipAxis::Horizontal, Corner::BottomRight) => Corner::BottomLeft,
            (FlipAxis::Vertical, Corner::TopLeft) => Corner::BottomLeft,
            (FlipAxis::Vertical, Corner::BottomLeft) => Corner::TopLeft,
            (FlipAxis::Vertical, Corner::TopRight) => Corner::BottomRight,
            (FlipAxis::Vertical, Corner::BottomRight) => Corner::TopRight,
        }
    }
}

/// Mirror axes: horizontal swaps left and right, vertical swaps top and
/// bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlipAxis {
    Horizontal,
    Vertical,
}

/// Rectangular grid of optional pattern cells plus an optional corner marker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid2D {
    pub rows: usize,
    pub cols: usize,
    cells: Vec<Option<PatternCell>>,
    pub marker: Option<Corner>,
}

impl Grid2D {
    pub fn new(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Grid2D { rows, cols, cells: vec![None; rows * cols], marker: None }
    }

    pub fn get(&self, r: usize, c: usize) -> Option<PatternCell> {
        self.cells[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, cell: Option<PatternCell>) {
        self.cells[r * self.cols + c] = cell.map(PatternCell::canonical);
    }

    /// Canonical content string; equal iff the grids are cell-for-cell equal
    /// after symmetry canonicalization.
    pub fn content_key(&self) -> String {
        let mut s = format!("{}x{}", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                match self.get(r, c) {
                    Some(cell) => {
                        let cell = cell.canonical();
                        s.push_str(&format!(";{}@{}", cell.pattern.id_string(), cell.rotation));
                    }
                    None => s.push_str(";_"),
                }
            }
        }
        if let Some(m) = self.marker {
            s.push_str(&format!(";marker={m:?}"));
        }
        s
    }
}

/// Clockwise grid rotation: cell (r, c) moves to (c, rows-1-r) and every
/// pattern gains a quarter turn; the marker corner maps along.
pub fn rotate_grid(grid: &Grid2D, quarter_turns: u8) -> Grid2D {
    let mut out = grid.clone();
    for _ in 0..quarter_turns % 4 {
        let mut next = Grid2D::new(out.cols, out.rows);
        for r in 0..out.rows {
            for c in 0..out.cols {
                if let Some(cell) = out.get(r, c) {
                    next.set(c, out.rows - 1 - r, Some(cell.rotated(1)));
                }
            }
        }
        next.marker = out.marker.map(Corner::rotated_cw);
        out = next;
    }
    out
}

/// Mirror the grid; asymmetric glyphs become their mirrored-variant ids so a
/// flipped grid is never confused with a rotation.
pub fn flip_grid(grid: &Grid2D, axis: FlipAxis) -> Grid2D {
    let mut out = Grid2D::new(grid.rows, grid.cols);
    for r in 0..grid.rows {
        for c in 0..grid.cols {
            if let Some(cell) = grid.get(r, c) {
                let (nr, nc) = match axis {
                    FlipAxis::Horizontal => (r, grid.cols - 1 - c),
                    FlipAxis::Vertical => (grid.rows - 1 - r, c),
                };
                let rotation = match axis {
                    FlipAxis::Horizontal => (4 - cell.rotation) % 4,
                    FlipAxis::Vertical => (2 + 4 - cell.rotation) % 4,
                };
                out.set(
                    nr,
                    nc,
                    Some(PatternCell::with_rotation(cell.pattern.mirrored(), rotation)),
                );
            }
        }
    }
    out.marker = grid.marker.map(|m| m.flipped(axis));
    out
}

/// Mapping of the six cube faces to pattern cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceMap {
    cells: [PatternCell; 6],
}

impl FaceMap {
    pub fn new(cells: [PatternCell; 6]) -> Self {
        FaceMap { cells }
    }

    /// Six distinct solid colors, one per face, in the given order.
    pub fn solid(order: [u8; 6]) -> Self {
        FaceMap { cells: order.map(|c| PatternCell::new(Pattern::Solid(c))) }
    }

    pub fn get(&self, face: FaceName) -> PatternCell {
        self.cells[face.index()]
    }

    pub fn set(&mut self, face: FaceName, cell: PatternCell) {
        self.cells[face.index()] = cell.canonical();
    }

    pub fn swapped(&self, a: FaceName, b: FaceName) -> FaceMap {
        let mut out = self.clone();
        let (ca, cb) = (self.get(a), self.get(b));
        out.set(a, cb);
        out.set(b, ca);
        out
    }
}

/// The 11 canonical cube nets. The digits are the row signature read
/// bottom-to-top; the trailing index distinguishes variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NetName {
    N1410,
    N1411,
    N1412,
    N1413,
    N1414,
    N1415,
    N2310,
    N2311,
    N2312,
    N222,
    N33,
}

pub const NET_NAMES: [NetName; 11] = [
    NetName::N1410,
    NetName::N1411,
    NetName::N1412,
    NetName::N1413,
    NetName::N1414,
    NetName::N1415,
    NetName::N2310,
    NetName::N2311,
    NetName::N2312,
    NetName::N222,
    NetName::N33,
];

/// The pivot net all equivalences are measured against.
pub const PIVOT_NET: NetName = NetName::N1410;

impl NetName {
    pub fn label(self) -> &'static str {
        match self {
            NetName::N1410 => "1-4-1-0",
            NetName::N1411 => "1-4-1-1",
            NetName::N1412 => "1-4-1-2",
            NetName::N1413 => "1-4-1-3",
            NetName::N1414 => "1-4-1-4",
            NetName::N1415 => "1-4-1-5",
            NetName::N2310 => "2-3-1-0",
            NetName::N2311 => "2-3-1-1",
            NetName::N2312 => "2-3-1-2",
            NetName::N222 => "2-2-2",
            NetName::N33 => "3-3",
        }
    }

    /// Hexomino cells as (row, col), row 0 on top of the drawing.
    fn hexomino(self) -> [(usize, usize); 6] {
        match self {
            // Middle band Bottom-Right-Top-Left; the top-row cell folds to
            // Front and the bottom-row cell to Back.
            NetName::N1410 => [(0, 0), (1, 0), (1, 1), (1, 2), (1, 3), (2, 0)],
            NetName::N1411 => [(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 0)],
            NetName::N1412 => [(0, 2), (1, 0), (1, 1), (1, 2), (1, 3), (2, 0)],
            NetName::N1413 => [(0, 3), (1, 0), (1, 1), (1, 2), (1, 3), (2, 0)],
            NetName::N1414 => [(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 1)],
            NetName::N1415 => [(0, 2), (1, 0), (1, 1), (1, 2), (1, 3), (2, 1)],
            // Single Front cell on top, band of three, Left + Back pair
            // hanging off the band's first column.
            NetName::N2310 => [(0, 1), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)],
            NetName::N2311 => [(0, 2), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)],
            NetName::N2312 => [(0, 3), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)],
            // Staircase of dominoes.
            NetName::N222 => [(0, 2), (0, 3), (1, 1), (1, 2), (2, 0), (2, 1)],
            // Two offset rows of three.
            NetName::N33 => [(0, 2), (0, 3), (0, 4), (1, 0), (1, 1), (1, 2)],
        }
    }
}

/// One of the 11 canonical unfoldings with per-face placement and the
/// in-plane rotation each face's pattern must carry so the net folds into
/// the pivot cube.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetLayout {
    pub name: NetName,
    pub placement: Vec<(FaceName, (usize, usize))>,
    pub face_rotation: [u8; 6],
}

impl NetLayout {
    pub fn cell_of(&self, face: FaceName) -> (usize, usize) {
        self.placement.iter().find(|(f, _)| *f == face).unwrap().1
    }

    pub fn rotation_of(&self, face: FaceName) -> u8 {
        self.face_rotation[face.index()]
    }
}

type IVec3 = [i32; 3];

fn neg(v: IVec3) -> IVec3 {
    [-v[0], -v[1], -v[2]]
}

fn add(a: IVec3, b: IVec3) -> IVec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: IVec3, b: IVec3) -> IVec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: IVec3, b: IVec3) -> IVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Frame of one folded net cell: outward normal plus the 3D images of the
/// net's row+ and col+ directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct CellFrame {
    center: IVec3,
    normal: IVec3,
    row_dir: IVec3,
    col_dir: IVec3,
}

/// Quarter-turn of an in-plane direction, clockwise as seen on the pattern
/// side of the face: up goes to right.
fn rotate_in_face(v: IVec3, up: IVec3, right: IVec3, normal: IVec3) -> IVec3 {
    if v == up {
        right
    } else if v == right {
        neg(up)
    } else if v == neg(up) {
        neg(right)
    } else if v == neg(right) {
        up
    } else {
        panic!("direction {v:?} not in face plane of normal {normal:?}");
    }
}

/// Fold the hexomino and return the frame of each cell, keyed by cell.
fn fold_cells(
    cells: &[(usize, usize); 6],
    anchor: (usize, usize),
) -> Result<Vec<((usize, usize), CellFrame)>, PatternError> {
    let mut frames: Vec<((usize, usize), CellFrame)> = Vec::with_capacity(6);
    let start = CellFrame {
        center: [1, 1, 0],
        normal: [0, 0, -1],
        row_dir: [0, 1, 0],
        col_dir: [1, 0, 0],
    };
    frames.push((anchor, start));
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(anchor);
    while let Some(cur) = queue.pop_front() {
        let frame = frames.iter().find(|(c, _)| *c == cur).unwrap().1;
        let deltas: [(isize, isize); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
        for (dr, dc) in deltas {
            let nr = cur.0 as isize + dr;
            let nc = cur.1 as isize + dc;
            if nr < 0 || nc < 0 {
                continue;
            }
            let next = (nr as usize, nc as usize);
            if !cells.contains(&next) {
                continue;
            }
            // Fold over the shared edge: the step direction becomes the new
            // outward normal; directions along the step map onto the old
            // normal's axis; the hinge axis is untouched.
            let step = match (dr, dc) {
                (-1, 0) => neg(frame.row_dir),
                (1, 0) => frame.row_dir,
                (0, -1) => neg(frame.col_dir),
                _ => frame.col_dir,
            };
            let map_dir = |v: IVec3| -> IVec3 {
                if v == step {
                    neg(frame.normal)
                } else if v == neg(step) {
                    frame.normal
                } else {
                    v
                }
            };
            let folded = CellFrame {
                center: sub(add(frame.center, step), frame.normal),
                normal: step,
                row_dir: map_dir(frame.row_dir),
                col_dir: map_dir(frame.col_dir),
            };
            match frames.iter().find(|(c, _)| *c == next) {
                Some((_, existing)) => {
                    if *existing != folded {
                        return Err(PatternError::MalformedNet(format!(
                            "cell {next:?} folds inconsistently"
                        )));
                    }
                }
                None => {
                    frames.push((next, folded));
                    queue.push_back(next);
                }
            }
        }
    }
    if frames.len() != 6 {
        return Err(PatternError::MalformedNet("net is not edge-connected".into()));
    }
    let mut normals: Vec<IVec3> = frames.iter().map(|(_, f)| f.normal).collect();
    normals.sort();
    normals.dedup();
    if normals.len() != 6 {
        return Err(PatternError::MalformedNet("cells overlap when folded".into()));
    }
    Ok(frames)
}

fn anchor_of(cells: &[(usize, usize); 6]) -> (usize, usize) {
    // Leftmost cell of row 1, the net's designated Bottom face.
    *cells
        .iter()
        .filter(|(r, _)| *r == 1)
        .min_by_key(|(_, c)| *c)
        .expect("canonical nets always have a middle row")
}

/// Per-face folded frame of a net, with the pattern-side up/right axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct FoldedFace {
    cell: (usize, usize),
    up: IVec3,
    right: IVec3,
}

fn folded_faces(name: NetName) -> Result<[FoldedFace; 6], PatternError> {
    let cells = name.hexomino();
    let frames = fold_cells(&cells, anchor_of(&cells))?;
    let mut out = [FoldedFace { cell: (0, 0), up: [0; 3], right: [0; 3] }; 6];
    for (cell, frame) in frames {
        let face = FaceName::from_normal(frame.normal)
            .ok_or_else(|| PatternError::MalformedNet("non-axis normal".into()))?;
        out[face.index()] =
            FoldedFace { cell, up: neg(frame.row_dir), right: frame.col_dir };
    }
    Ok(out)
}

/// Canonical layout: placements from the geometric fold, face rotations
/// chosen so folding with any FaceMap reproduces the pivot cube exactly.
pub fn canonical_net(name: NetName) -> NetLayout {
    let own = folded_faces(name).expect("canonical nets are well-formed");
    let pivot = folded_faces(PIVOT_NET).expect("pivot net is well-formed");
    let mut placement = Vec::with_capacity(6);
    let mut face_rotation = [0u8; 6];
    for face in FACES {
        let f = own[face.index()];
        let p = pivot[face.index()];
        placement.push((face, f.cell));
        // Quarter turns of the drawn pattern that make the folded
        // orientation coincide with the pivot's.
        let normal = face.normal();
        let mut up = f.up;
        let mut right = f.right;
        let mut turns = 0u8;
        while up != p.up || right != p.right {
            let nu = rotate_in_face(up, up, right, normal);
            // Rotating the drawn pattern clockwise turns its up-mark toward
            // its right; the frame advances the same way.
            right = rotate_in_face(right, up, right, normal);
            up = nu;
            turns += 1;
            assert!(turns < 4, "face frames must align within the quarter-turn group");
        }
        face_rotation[face.index()] = turns;
    }
    placement.sort_by_key(|(_, cell)| *cell);
    NetLayout { name, placement, face_rotation }
}

/// Alternative net that folds to the same cube as the pivot net would with
/// the same FaceMap, per-face in-plane rotations included.
pub fn equivalent_net(target_net: NetName, _faces: &FaceMap) -> NetLayout {
    canonical_net(target_net)
}

/// One cube face as folded: its pattern plus the 3D directions the drawn
/// pattern's up and right point at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubeFace {
    pub cell: PatternCell,
    pub up: IVec3,
    pub right: IVec3,
}

/// Fully oriented cube; faces indexed by [`FaceName`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeModel {
    faces: [CubeFace; 6],
}

impl CubeModel {
    pub fn face(&self, name: FaceName) -> CubeFace {
        self.faces[name.index()]
    }
}

/// Fold a net with a face map into a fully oriented cube.
pub fn fold_net(layout: &NetLayout, faces: &FaceMap) -> Result<CubeModel, PatternError> {
    let cells = layout_cells(layout)?;
    let frames = fold_cells(&cells, anchor_of(&cells))?;
    let mut out = [CubeFace {
        cell: PatternCell::new(Pattern::Solid(0)),
        up: [0; 3],
        right: [0; 3],
    }; 6];
    for (cell_pos, frame) in frames {
        let face = FaceName::from_normal(frame.normal)
            .ok_or_else(|| PatternError::MalformedNet("non-axis normal".into()))?;
        let placed = layout
            .placement
            .iter()
            .find(|(_, p)| *p == cell_pos)
            .map(|(f, _)| *f)
            .ok_or_else(|| PatternError::MalformedNet("placement missing a cell".into()))?;
        if placed != face {
            return Err(PatternError::MalformedNet(format!(
                "cell {cell_pos:?} is labelled {placed:?} but folds to {face:?}"
            )));
        }
        let pattern_cell = faces.get(face);
        let total_turns = (pattern_cell.rotation + layout.rotation_of(face)) % 4;
        let mut up = neg(frame.row_dir);
        let mut right = frame.col_dir;
        for _ in 0..total_turns {
            let nu = rotate_in_face(up, up, right, frame.normal);
            right = rotate_in_face(right, up, right, frame.normal);
            up = nu;
        }
        out[face.index()] =
            CubeFace { cell: PatternCell::new(pattern_cell.pattern), up, right };
    }
    Ok(CubeModel { faces: out })
}

fn layout_cells(layout: &NetLayout) -> Result<[(usize, usize); 6], PatternError> {
    if layout.placement.len() != 6 {
        return Err(PatternError::MalformedNet("need exactly six placed faces".into()));
    }
    let mut cells = [(0usize, 0usize); 6];
    for (i, (_, c)) in layout.placement.iter().enumerate() {
        cells[i] = *c;
    }
    let mut dedup = cells.to_vec();
    dedup.sort();
    dedup.dedup();
    if dedup.len() != 6 {
        return Err(PatternError::MalformedNet("placements collide".into()));
    }
    Ok(cells)
}

/// The face opposite the given one on a folded cube.
pub fn opposite_face(_cube: &CubeModel, face: FaceName) -> FaceName {
    face.opposite()
}

/// The 24 proper rotations of the cube as integer matrices (rows).
pub fn cube_rotations() -> &'static [[IVec3; 3]] {
    use std::sync::OnceLock;
    static ROTS: OnceLock<Vec<[IVec3; 3]>> = OnceLock::new();
    ROTS.get_or_init(|| {
        let mut out: Vec<[IVec3; 3]> = Vec::new();
        let axes: [IVec3; 6] = [
            [1, 0, 0],
            [-1, 0, 0],
            [0, 1, 0],
            [0, -1, 0],
            [0, 0, 1],
            [0, 0, -1],
        ];
        for &x in &axes {
            for &y in &axes {
                if cross(x, y) == [0, 0, 0] {
                    continue;
                }
                let z = cross(x, y);
                out.push([x, y, z]);
            }
        }
        out.sort();
        out.dedup();
        assert_eq!(out.len(), 24);
        out
    })
}

pub fn apply_rotation(m: &[IVec3; 3], v: IVec3) -> IVec3 {
    // Columns of the matrix are the images of the basis vectors.
    [
        m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
        m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
        m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2],
    ]
}

impl CubeModel {
    /// The cube rigidly rotated by one of the 24 proper rotations.
    pub fn rotated(&self, m: &[IVec3; 3]) -> CubeModel {
        let mut faces = self.faces;
        for face in FACES {
            let src = self.face(face);
            let new_normal = apply_rotation(m, face.normal());
            let target = FaceName::from_normal(new_normal).unwrap();
            faces[target.index()] = CubeFace {
                cell: src.cell,
                up: apply_rotation(m, src.up),
                right: apply_rotation(m, src.right),
            };
        }
        CubeModel { faces }
    }

    fn face_matches(a: &CubeFace, b: &CubeFace) -> bool {
        if a.cell.pattern != b.cell.pattern {
            return false;
        }
        match a.cell.pattern.symmetry() {
            Symmetry::Full => true,
            Symmetry::Half => (a.up == b.up && a.right == b.right)
                || (a.up == neg(b.up) && a.right == neg(b.right)),
            Symmetry::Asymmetric => a.up == b.up && a.right == b.right,
        }
    }

    pub fn identical(&self, other: &CubeModel) -> bool {
        FACES.iter().all(|&f| Self::face_matches(&self.face(f), &other.face(f)))
    }

    /// Equal up to one of the 24 rigid rotations, patterns and their
    /// orientations included.
    pub fn rotation_equivalent(&self, other: &CubeModel) -> bool {
        cube_rotations().iter().any(|m| self.rotated(m).identical(other))
    }
}

/// The versioned pattern-library document shipped with the repo.
pub const PATTERN_LIBRARY_JSON: &str = include_str!("../assets/patterns.json");

#[derive(Debug, Clone, Deserialize)]
pub struct PatternLibrary {
    pub version: u32,
    pub patterns: Vec<PatternEntry>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PatternEntry {
    pub id: String,
    pub kind: String,
    pub symmetry: String,
    #[serde(default)]
    pub color: Option<String>,
    #[serde(default)]
    pub mirror_of: Option<String>,
}

pub fn pattern_library() -> PatternLibrary {
    serde_json::from_str(PATTERN_LIBRARY_JSON).expect("bundled pattern library parses")
}

/// A corner of the cube, encoded by octant signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeCorner(pub u8);

pub const CUBE_CORNERS: [CubeCorner; 8] = [
    CubeCorner(0),
    CubeCorner(1),
    CubeCorner(2),
    CubeCorner(3),
    CubeCorner(4),
    CubeCorner(5),
    CubeCorner(6),
    CubeCorner(7),
];

impl CubeCorner {
    pub fn signs(self) -> IVec3 {
        [
            if self.0 & 1 != 0 { 1 } else { -1 },
            if self.0 & 2 != 0 { 1 } else { -1 },
            if self.0 & 4 != 0 { 1 } else { -1 },
        ]
    }

    pub fn antipode(self) -> CubeCorner {
        CubeCorner(self.0 ^ 7)
    }

    /// The three faces visible from this corner.
    pub fn visible_faces(self) -> [FaceName; 3] {
        let s = self.signs();
        [
            FaceName::from_normal([s[0], 0, 0]).unwrap(),
            FaceName::from_normal([0, s[1], 0]).unwrap(),
            FaceName::from_normal([0, 0, s[2]]).unwrap(),
        ]
    }
}

/// One slot of a drawn corner view: where the face pattern lands and how
/// many quarter turns it appears rotated by inside the slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerSlot {
    pub face: FaceName,
    pub pattern: Pattern,
    pub apparent_turns: u8,
    pub mirrored_in_slot: bool,
}

/// A trimetric corner view: the top, screen-left and screen-right rhombi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerView {
    pub corner: CubeCorner,
    pub slots: [CornerSlot; 3],
}

/// Slot frames of the canonical (+x, +y, +z) corner drawing, expressed as
/// (up, right) world directions per visible face. Frames follow the fold
/// convention up x right = -normal (patterns seen from outside the cube).
pub fn slot_frames() -> [(FaceName, IVec3, IVec3); 3] {
    [
        // Top rhombus.
        (FaceName::Top, [0, -1, 0], [-1, 0, 0]),
        // Screen-left rhombus (+y face): up is world-up.
        (FaceName::Back, [0, 0, 1], [-1, 0, 0]),
        // Screen-right rhombus (+x face): up is world-up.
        (FaceName::Right, [0, 0, 1], [0, 1, 0]),
    ]
}

/// Deterministic rotation taking `corner` to the canonical (+,+,+) corner.
fn corner_alignment(corner: CubeCorner) -> &'static [IVec3; 3] {
    let target = [1, 1, 1];
    cube_rotations()
        .iter()
        .find(|m| apply_rotation(m, corner.signs()) == target)
        .expect("every corner reaches the canonical octant")
}

/// The three faces seen from a corner with their apparent in-view pattern
/// orientations, ordered (top, screen-left, screen-right).
pub fn corner_view(cube: &CubeModel, corner: CubeCorner) -> CornerView {
    let m = corner_alignment(corner);
    let rotated = cube.rotated(m);
    let inverse: Vec<FaceName> = FACES
        .iter()
        .map(|&f| FaceName::from_normal(apply_rotation(m, f.normal())).unwrap())
        .collect();
    let mut slots = Vec::with_capacity(3);
    for (slot_face, slot_up, slot_right) in slot_frames() {
        let shown = rotated.face(slot_face);
        // Which original face ended up here.
        let original = FACES[inverse.iter().position(|&f| f == slot_face).unwrap()];
        // apparent_turns k satisfies rot^k(slot frame) = shown frame.
        let mut turns = None;
        let mut up = slot_up;
        let mut right = slot_right;
        for k in 0..4u8 {
            if (up, right) == (shown.up, shown.right) {
                turns = Some(k);
                break;
            }
            let nu = rotate_in_face(up, up, right, slot_face.normal());
            right = rotate_in_face(right, up, right, slot_face.normal());
            up = nu;
        }
        // Chirality flips cannot happen under proper rotations; the flag is
        // a guard for hand-built cube models.
        let mirrored = turns.is_none();
        slots.push(CornerSlot {
            face: original,
            pattern: shown.cell.pattern,
            apparent_turns: turns.unwrap_or(0),
            mirrored_in_slot: mirrored,
        });
    }
    CornerView { corner, slots: [slots[0], slots[1], slots[2]] }
}
