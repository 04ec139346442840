//! Paper folding, hole punching and unfolding on an integer grid.
//!
//! Folds always bring the smaller flap onto the larger side so reflected
//! cells stay on the sheet. A diagonal fold is a 45-degree line through
//! lattice corners cutting a triangle off one corner of the current sheet;
//! the run of cells the crease bisects folds onto itself. Punching goes
//! through every layer under the visible cell, which is what reflecting the
//! hole set across each logged fold in reverse order computes.

use super::SimError;
use crate::patterns::Corner;
use serde::{Deserialize, Serialize};

/// A fold requested in coordinates of the current sheet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FoldOp {
    /// Fold across the horizontal boundary under `line` rows.
    Horizontal { line: usize },
    /// Fold across the vertical boundary right of `line` columns.
    Vertical { line: usize },
    /// Fold a corner triangle with `legs` cells along each edge.
    Diagonal { corner: Corner, legs: usize },
}

impl FoldOp {
    /// Endpoints of the 45-degree crease on the current sheet, as lattice
    /// corner coordinates (row, col).
    pub fn diagonal_endpoints(self, rows: usize, cols: usize) -> Option<((usize, usize), (usize, usize))> {
        let FoldOp::Diagonal { corner, legs } = self else {
            return None;
        };
        Some(match corner {
            Corner::TopLeft => ((legs, 0), (0, legs)),
            Corner::TopRight => ((0, cols - legs), (legs, cols)),
            Corner::BottomLeft => ((rows - legs, 0), (rows, legs)),
            Corner::BottomRight => ((rows, cols - legs), (rows - legs, cols)),
        })
    }
}

/// Executed fold in absolute sheet coordinates, kept for unfolding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
enum FoldRecord {
    /// Rows `folded` reflect to `2 * crease - 1 - r`.
    Rows { crease: usize, folded: (usize, usize) },
    /// Columns `folded` reflect to `2 * crease - 1 - c`.
    Cols { crease: usize, folded: (usize, usize) },
    /// Triangle fold; cells strictly inside the triangle reflect through
    /// the map (r, c) -> (base.0 + s*(d - lc), base.1 + s*(d - lr)) derived
    /// from the corner geometry.
    Diag { corner: Corner, legs: usize, rect: (usize, usize, usize, usize) },
}

/// Replayable paper sheet. `-1 / 0 / 1` states of the source bookkeeping map
/// to folded-away flags, blanks and holes over the original grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperState {
    pub original_rows: usize,
    pub original_cols: usize,
    /// Current sheet rectangle (r0, c0, r1, c1), half-open, absolute.
    region: (usize, usize, usize, usize),
    /// Cells folded away, absolute coordinates.
    away: Vec<bool>,
    /// Punched holes on the visible layer, absolute coordinates.
    holes: Vec<bool>,
    folds: Vec<FoldRecord>,
    punches: Vec<(usize, usize)>,
}

impl PaperState {
    pub fn new(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        PaperState {
            original_rows: rows,
            original_cols: cols,
            region: (0, 0, rows, cols),
            away: vec![false; rows * cols],
            holes: vec![false; rows * cols],
            folds: Vec::new(),
            punches: Vec::new(),
        }
    }

    fn at(&self, r: usize, c: usize) -> usize {
        r * self.original_cols + c
    }

    /// Current sheet dims (rows, cols).
    pub fn current_dims(&self) -> (usize, usize) {
        let (r0, c0, r1, c1) = self.region;
        (r1 - r0, c1 - c0)
    }

    pub fn fold_count(&self) -> usize {
        self.folds.len()
    }

    pub fn region_origin(&self) -> (usize, usize) {
        (self.region.0, self.region.1)
    }

    /// Cell state for rendering: None = folded away, Some(true) = hole.
    pub fn cell_state(&self, r: usize, c: usize) -> Option<bool> {
        let (r0, c0, r1, c1) = self.region;
        let visible = r >= r0 && r < r1 && c >= c0 && c < c1 && !self.away[self.at(r, c)];
        visible.then(|| self.holes[self.at(r, c)])
    }

    /// Cells of the current visible layer, absolute, row-major.
    pub fn visible_cells(&self) -> Vec<(usize, usize)> {
        let (r0, c0, r1, c1) = self.region;
        let mut out = Vec::new();
        for r in r0..r1 {
            for c in c0..c1 {
                if !self.away[self.at(r, c)] {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// Crease line of the most recent fold, for rendering reference strips:
    /// two endpoints in absolute lattice-corner coordinates.
    pub fn last_crease(&self) -> Option<((f64, f64), (f64, f64))> {
        match self.folds.last()? {
            FoldRecord::Rows { crease, .. } => {
                let (_, c0, _, c1) = self.region;
                Some(((*crease as f64, c0 as f64), (*crease as f64, c1 as f64)))
            }
            FoldRecord::Cols { crease, .. } => {
                let (r0, _, r1, _) = self.region;
                Some(((r0 as f64, *crease as f64), (r1 as f64, *crease as f64)))
            }
            FoldRecord::Diag { corner, legs, rect } => {
                let (r0, c0, r1, c1) = *rect;
                let m = *legs as f64;
                Some(match corner {
                    Corner::TopLeft => ((r0 as f64 + m, c0 as f64), (r0 as f64, c0 as f64 + m)),
                    Corner::TopRight => ((r0 as f64, c1 as f64 - m), (r0 as f64 + m, c1 as f64)),
                    Corner::BottomLeft => ((r1 as f64 - m, c0 as f64), (r1 as f64, c0 as f64 + m)),
                    Corner::BottomRight => ((r1 as f64, c1 as f64 - m), (r1 as f64 - m, c1 as f64)),
                })
            }
        }
    }

    /// Apply a fold; the folded area is marked away, the sheet shrinks (axis
    /// folds) and the op lands on the log.
    pub fn fold(&self, op: FoldOp) -> Result<PaperState, SimError> {
        let mut next = self.clone();
        let (r0, c0, r1, c1) = self.region;
        match op {
            FoldOp::Horizontal { line } => {
                let rows = r1 - r0;
                if line == 0 || line >= rows {
                    return Err(SimError::FoldOutOfRange(line));
                }
                let crease = r0 + line;
                // The smaller flap folds onto the larger side.
                let (folded, kept) = if line <= rows - line {
                    ((r0, crease), (crease, r1))
                } else {
                    ((crease, r1), (r0, crease))
                };
                for r in folded.0..folded.1 {
                    for c in c0..c1 {
                        next.away[self.at(r, c)] = true;
                    }
                }
                next.region = (kept.0, c0, kept.1, c1);
                next.folds.push(FoldRecord::Rows { crease, folded });
            }
            FoldOp::Vertical { line } => {
                let cols = c1 - c0;
                if line == 0 || line >= cols {
                    return Err(SimError::FoldOutOfRange(line));
                }
                let crease = c0 + line;
                let (folded, kept) = if line <= cols - line {
                    ((c0, crease), (crease, c1))
                } else {
                    ((crease, c1), (c0, crease))
                };
                for c in folded.0..folded.1 {
                    for r in r0..r1 {
                        next.away[self.at(r, c)] = true;
                    }
                }
                next.region = (r0, kept.0, r1, kept.1);
                next.folds.push(FoldRecord::Cols { crease, folded });
            }
            FoldOp::Diagonal { corner, legs } => {
                let (rows, cols) = self.current_dims();
                if legs < 2 || legs > rows.min(cols) {
                    return Err(SimError::FoldOutOfRange(legs));
                }
                let rec = FoldRecord::Diag { corner, legs, rect: self.region };
                for r in r0..r1 {
                    for c in c0..c1 {
                        if diag_in_triangle(&rec, r, c) {
                            next.away[self.at(r, c)] = true;
                        }
                    }
                }
                next.folds.push(rec);
            }
        }
        Ok(next)
    }

    /// Punch holes at positions relative to the current sheet; folded-away
    /// or duplicate cells are rejected.
    pub fn punch(&self, points: &[(usize, usize)]) -> Result<PaperState, SimError> {
        let mut next = self.clone();
        let (r0, c0, ..) = self.region;
        let (rows, cols) = self.current_dims();
        for &(r, c) in points {
            if r >= rows || c >= cols {
                return Err(SimError::PunchInvalid(r, c));
            }
            let (ar, ac) = (r0 + r, c0 + c);
            let idx = self.at(ar, ac);
            if next.away[idx] || next.holes[idx] {
                return Err(SimError::PunchInvalid(r, c));
            }
            next.holes[idx] = true;
            next.punches.push((ar, ac));
        }
        Ok(next)
    }

    pub fn hole_count(&self) -> usize {
        self.holes.iter().filter(|&&h| h).count()
    }

    /// Unfold everything: reverse the fold log, duplicating holes across
    /// each crease into that fold's folded-away area. Returns the hole
    /// matrix at original dims.
    pub fn unfold(&self) -> Vec<Vec<bool>> {
        let mut holes: Vec<(usize, usize)> = Vec::new();
        for r in 0..self.original_rows {
            for c in 0..self.original_cols {
                if self.holes[self.at(r, c)] {
                    holes.push((r, c));
                }
            }
        }
        for fold in self.folds.iter().rev() {
            let mut extra = Vec::new();
            for &(r, c) in &holes {
                if let Some(image) = reflect_into_folded(fold, r, c) {
                    extra.push(image);
                }
            }
            holes.extend(extra);
            holes.sort_unstable();
            holes.dedup();
        }
        let mut out = vec![vec![false; self.original_cols]; self.original_rows];
        for (r, c) in holes {
            out[r][c] = true;
        }
        out
    }

    /// Refold oracle: push an original-dims hole matrix through the logged
    /// fold sequence and report the holes visible on the final sheet
    /// (absolute coordinates). Punch-through-all-layers semantics: a visible
    /// cell shows a hole iff any cell stacked under it has one.
    pub fn refold_visible(&self, unfolded: &[Vec<bool>]) -> Vec<(usize, usize)> {
        let mut seen = std::collections::BTreeSet::new();
        for r in 0..self.original_rows {
            for c in 0..self.original_cols {
                if !unfolded[r][c] {
                    continue;
                }
                let (mut pr, mut pc) = (r, c);
                for fold in &self.folds {
                    if let Some(image) = fold_image(fold, pr, pc) {
                        (pr, pc) = image;
                    }
                }
                seen.insert((pr, pc));
            }
        }
        seen.into_iter().collect()
    }

    /// Holes punched on the visible layer, absolute, sorted.
    pub fn visible_holes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.original_rows {
            for c in 0..self.original_cols {
                let i = self.at(r, c);
                if self.holes[i] && !self.away[i] {
                    out.push((r, c));
                }
            }
        }
        out
    }
}

fn diag_local(rec: &FoldRecord, r: usize, c: usize) -> Option<(usize, usize, usize)> {
    let FoldRecord::Diag { corner, legs, rect } = rec else {
        return None;
    };
    let (r0, c0, r1, c1) = *rect;
    if r < r0 || r >= r1 || c < c0 || c >= c1 {
        return None;
    }
    // Local coordinates measured from the folded corner.
    let (i, j) = match corner {
        Corner::TopLeft => (r - r0, c - c0),
        Corner::TopRight => (r - r0, c1 - 1 - c),
        Corner::BottomLeft => (r1 - 1 - r, c - c0),
        Corner::BottomRight => (r1 - 1 - r, c1 - 1 - c),
    };
    Some((i, j, *legs))
}

fn diag_in_triangle(rec: &FoldRecord, r: usize, c: usize) -> bool {
    matches!(diag_local(rec, r, c), Some((i, j, legs)) if i + j + 2 <= legs)
}

/// Where a cell goes when this fold is applied; None when it stays put.
fn fold_image(rec: &FoldRecord, r: usize, c: usize) -> Option<(usize, usize)> {
    match rec {
        FoldRecord::Rows { crease, folded } => (r >= folded.0 && r < folded.1)
            .then(|| (2 * crease - 1 - r, c)),
        FoldRecord::Cols { crease, folded } => (c >= folded.0 && c < folded.1)
            .then(|| (r, 2 * crease - 1 - c)),
        FoldRecord::Diag { corner, legs, rect } => {
            if !diag_in_triangle(rec, r, c) {
                return None;
            }
            let (i, j, _) = diag_local(rec, r, c).unwrap();
            // Reflection across the 45-degree line: (i, j) -> (m-1-j, m-1-i)
            // in corner-local coordinates.
            let (ni, nj) = (legs - 1 - j, legs - 1 - i);
            let (r0, c0, r1, c1) = *rect;
            Some(match corner {
                Corner::TopLeft => (r0 + ni, c0 + nj),
                Corner::TopRight => (r0 + ni, c1 - 1 - nj),
                Corner::BottomLeft => (r1 - 1 - ni, c0 + nj),
                Corner::BottomRight => (r1 - 1 - ni, c1 - 1 - nj),
            })
        }
    }
}

/// Mirror image across the crease, kept only when it lands in the area this
/// fold folded away (cells with no layer under them do not duplicate holes).
fn reflect_into_folded(rec: &FoldRecord, r: usize, c: usize) -> Option<(usize, usize)> {
    match rec {
        FoldRecord::Rows { crease, folded } => {
            let rr = 2 * crease;
            if rr < r + 1 {
                return None;
            }
            let nr = rr - 1 - r;
            (nr >= folded.0 && nr < folded.1).then_some((nr, c))
        }
        FoldRecord::Cols { crease, folded } => {
            let cc = 2 * crease;
            if cc < c + 1 {
                return None;
            }
            let nc = cc - 1 - c;
            (nc >= folded.0 && nc < folded.1).then_some((r, nc))
        }
        FoldRecord::Diag { corner, legs, rect } => {
            let (i, j, m) = diag_local(rec, r, c)?;
            let _ = m;
            if i + 1 > *legs || j + 1 > *legs {
                return None;
            }
            let (ni, nj) = (legs - 1 - j, legs - 1 - i);
            let (r0, c0, r1, c1) = *rect;
            let cand = match corner {
                Corner::TopLeft => (r0 + ni, c0 + nj),
                Corner::TopRight => (r0 + ni, c1 - 1 - nj),
                Corner::BottomLeft => (r1 - 1 - ni, c0 + nj),
                Corner::BottomRight => (r1 - 1 - ni, c1 - 1 - nj),
            };
            diag_in_triangle(rec, cand.0, cand.1).then_some(cand)
        }
    }
}
