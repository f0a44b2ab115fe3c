//! Zeros of `f(t)` on `[0, L]` by oversampled sign changes and bisection.

use serde::{Deserialize, Serialize};

use super::{Segment, SegmentProcess, WaveSample};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountOptions {
    /// Grid points per unit of the top frequency: the step is
    /// `1/(oversampling · max_μ |⟨μ, α⟩|)`.
    pub oversampling: f64,
    /// Halvings allowed when a cell without a sign change cannot be shown
    /// to be zero-free.
    pub max_depth: u32,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self {
            oversampling: 16.0,
            max_depth: 40,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodalCount {
    pub count: usize,
    /// Sorted zeros in `[0, L]`, both endpoints included.
    pub roots: Vec<f64>,
    /// Grid step actually used.
    pub step: f64,
    /// Grid cells without a sign change that needed halving.
    pub refined_cells: usize,
    /// Sub-cells still undecided at `max_depth`: near-tangential spots
    /// where a double zero cannot be told apart from a near miss.
    pub unresolved_cells: usize,
    /// Zeros found only by halving.
    pub roots_from_refinement: usize,
}

pub fn count_nodal_intersections(sample: &WaveSample, segment: &Segment) -> NodalCount {
    count_nodal_intersections_with(sample, segment, CountOptions::default())
}

/// Counts zeros of `f` on `[0, L]`.
///
/// Every grid cell with a sign change holds one bisected zero. A cell with
/// endpoint values of equal sign is zero-free once
/// `min(|f(a)|, |f(b)|) > M₂ h² / 8`, `M₂` bounding `|f″|`, since `f` then
/// stays within `M₂ h²/8` of its chord; otherwise the cell is halved.
pub fn count_nodal_intersections_with(
    sample: &WaveSample,
    segment: &Segment,
    options: CountOptions,
) -> NodalCount {
    ZeroScan::new(&sample.along(segment), options).run()
}

struct ZeroScan<'a> {
    process: &'a SegmentProcess,
    options: CountOptions,
    tolerance: f64,
    curvature: f64,
    roots: Vec<f64>,
    refined_cells: usize,
    unresolved_cells: usize,
    roots_from_refinement: usize,
}

impl<'a> ZeroScan<'a> {
    fn new(process: &'a SegmentProcess, options: CountOptions) -> Self {
        let length = process.length();
        Self {
            process,
            options,
            tolerance: 1e-13 * length.max(1.0),
            curvature: process.curvature_bound(),
            roots: Vec::new(),
            refined_cells: 0,
            unresolved_cells: 0,
            roots_from_refinement: 0,
        }
    }

    fn run(mut self) -> NodalCount {
        let length = self.process.length();
        let top = self.process.max_frequency();
        let cells = if top > 0.0 {
            (length * self.options.oversampling * top).ceil().max(1.0) as usize
        } else {
            1
        };
        let step = length / cells as f64;
        let grid = |i: usize| if i == cells { length } else { i as f64 * step };

        let mut left = 0.0;
        let mut f_left = self.process.value(left);
        if f_left == 0.0 {
            self.roots.push(left);
        }
        for i in 1..=cells {
            let right = grid(i);
            let f_right = self.process.value(right);
            if f_right == 0.0 {
                self.roots.push(right);
            }
            if f_left != 0.0 && f_right != 0.0 {
                if (f_left < 0.0) != (f_right < 0.0) {
                    let root = self.bisect(left, right, f_left);
                    self.roots.push(root);
                } else if !self.zero_free(left, right, f_left, f_right) {
                    self.refined_cells += 1;
                    let before = self.roots.len();
                    self.refine(left, right, f_left, f_right, 0);
                    self.roots_from_refinement += self.roots.len() - before;
                }
            }
            left = right;
            f_left = f_right;
        }
        self.roots.sort_by(f64::total_cmp);
        NodalCount {
            count: self.roots.len(),
            roots: self.roots,
            step,
            refined_cells: self.refined_cells,
            unresolved_cells: self.unresolved_cells,
            roots_from_refinement: self.roots_from_refinement,
        }
    }

    fn zero_free(&self, a: f64, b: f64, fa: f64, fb: f64) -> bool {
        let h = b - a;
        fa.abs().min(fb.abs()) > self.curvature * h * h / 8.0
    }

    /// Halves `[a, b]`, where `fa` and `fb` share a sign, until every piece
    /// is zero-free or shows a sign change.
    fn refine(&mut self, a: f64, b: f64, fa: f64, fb: f64, depth: u32) {
        if depth >= self.options.max_depth {
            self.unresolved_cells += 1;
            log::debug!("near-tangential cell [{a}, {b}] left undecided");
            return;
        }
        let mid = 0.5 * (a + b);
        let fm = self.process.value(mid);
        if fm == 0.0 {
            self.roots.push(mid);
            return;
        }
        for (x, y, fx, fy) in [(a, mid, fa, fm), (mid, b, fm, fb)] {
            if (fx < 0.0) != (fy < 0.0) {
                let root = self.bisect(x, y, fx);
                self.roots.push(root);
            } else if !self.zero_free(x, y, fx, fy) {
                self.refine(x, y, fx, fy, depth + 1);
            }
        }
    }

    fn bisect(&self, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
        while b - a > self.tolerance {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = self.process.value(mid);
            if fm == 0.0 {
                return mid;
            }
            if (fm < 0.0) == (fa < 0.0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }
}
