//! Deterministic adaptive tensor-product quadrature over the unit box.
//!
//! Each cell is integrated with a low- and a high-order Gauss-Legendre
//! tensor rule; the difference drives a worst-cell-first refinement queue.
//! Subdivision order, child numbering and the final leaf summation order are
//! all fixed so a job reproduces bit-identically.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Gauss-Legendre rule on (0, 1).
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Newton iteration on the Legendre polynomial, then affine map from
    /// (-1, 1) to (0, 1).
    fn build(n: usize) -> GaussRule {
        assert!(n >= 1);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            // Chebyshev-like initial guess.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes.push(0.5 * (1.0 - x)); // descending roots map to ascending nodes
            weights.push(0.5 * w);
        }
        nodes.reverse();
        weights.reverse();
        GaussRule { nodes, weights }
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Shared rule cache.
pub fn gauss_rule(n: usize) -> GaussRule {
    static CACHE: OnceLock<Mutex<HashMap<usize, GaussRule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("gauss rule cache");
    map.entry(n).or_insert_with(|| GaussRule::build(n)).clone()
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone)]
pub struct QuadOptions {
    pub rel_tol: f64,
    /// Cell budget; exceeded budgets fail carrying the best estimate.
    pub max_cells: usize,
    pub low_points: usize,
    pub high_points: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-6,
            max_cells: 20_000,
            low_points: 8,
            high_points: 16,
        }
    }
}

struct Cell {
    id: u64,
    lo: Vec<f64>,
    hi: Vec<f64>,
    value: Complex64,
    err: f64,
}

impl Cell {
    fn widest_axis(&self) -> usize {
        let mut best = 0usize;
        let mut width = 0.0f64;
        for (i, (l, h)) in self.lo.iter().zip(&self.hi).enumerate() {
            let w = h - l;
            if w > width {
                width = w;
                best = i;
            }
        }
        best
    }
}

struct HeapEntry {
    err: f64,
    id: u64,
    index: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on error, oldest cell first among ties.
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.id.cmp(&self.id))
    }
}

/// Integrates `f` over the open unit box (0,1)^dim.
pub fn integrate_unit_box<F>(dim: usize, f: &F, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(&[f64]) -> Complex64,
{
    assert!(dim >= 1);
    let low = gauss_rule(opts.low_points);
    let high = gauss_rule(opts.high_points);

    let mut cells: Vec<Cell> = Vec::new();
    let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
    let mut next_id = 0u64;
    let mut total_value = Complex64::zero();
    let mut total_err = 0.0f64;

    let mut push_cell = |lo: Vec<f64>,
                         hi: Vec<f64>,
                         cells: &mut Vec<Cell>,
                         heap: &mut BinaryHeap<HeapEntry>,
                         total_value: &mut Complex64,
                         total_err: &mut f64|
     -> Result<()> {
        let v_low = tensor_rule(dim, &lo, &hi, &low, f);
        let v_high = tensor_rule(dim, &lo, &hi, &high, f);
        if !v_high.is_finite() || !v_low.is_finite() {
            return Err(Error::Internal(
                "integrand returned a non-finite value".into(),
            ));
        }
        let err = (v_high - v_low).norm();
        let cell = Cell {
            id: next_id,
            lo,
            hi,
            value: v_high,
            err,
        };
        next_id += 1;
        *total_value += cell.value;
        *total_err += cell.err;
        heap.push(HeapEntry {
            err: cell.err,
            id: cell.id,
            index: cells.len(),
        });
        cells.push(cell);
        Ok(())
    };

    push_cell(
        vec![0.0; dim],
        vec![1.0; dim],
        &mut cells,
        &mut heap,
        &mut total_value,
        &mut total_err,
    )?;

    let mut splits = 0usize;
    let mut retired: Vec<bool> = vec![false];
    loop {
        let scale = total_value.norm().max(f64::MIN_POSITIVE);
        if total_err <= opts.rel_tol * scale {
            break;
        }
        if cells.len() >= opts.max_cells {
            let (value, error_estimate) = sum_leaves(&cells, &retired);
            return Err(Error::Quadrature {
                subdivisions: splits,
                error_estimate,
                value_re: value.re,
                value_im: value.im,
            });
        }
        let worst = loop {
            match heap.pop() {
                Some(entry) if !retired[entry.index] => break entry,
                Some(_) => continue,
                None => {
                    // Nothing left to refine; accept the current estimate.
                    let (value, error_estimate) = sum_leaves(&cells, &retired);
                    return Ok(QuadResult {
                        value,
                        error_estimate,
                        subdivisions: splits,
                    });
                }
            }
        };
        let (lo, hi, axis, value, err) = {
            let c = &cells[worst.index];
            (c.lo.clone(), c.hi.clone(), c.widest_axis(), c.value, c.err)
        };
        retired[worst.index] = true;
        total_value -= value;
        total_err -= err;
        splits += 1;

        let mid = 0.5 * (lo[axis] + hi[axis]);
        let mut lo_child_hi = hi.clone();
        lo_child_hi[axis] = mid;
        let mut hi_child_lo = lo.clone();
        hi_child_lo[axis] = mid;
        retired.push(false);
        push_cell(
            lo.clone(),
            lo_child_hi,
            &mut cells,
            &mut heap,
            &mut total_value,
            &mut total_err,
        )?;
        retired.push(false);
        push_cell(
            hi_child_lo,
            hi,
            &mut cells,
            &mut heap,
            &mut total_value,
            &mut total_err,
        )?;
    }

    let (value, error_estimate) = sum_leaves(&cells, &retired);
    Ok(QuadResult {
        value,
        error_estimate,
        subdivisions: splits,
    })
}

/// Final accumulation over live cells in id order, so the result does not
/// depend on the refinement history's floating bookkeeping.
fn sum_leaves(cells: &[Cell], retired: &[bool]) -> (Complex64, f64) {
    let mut value = Complex64::zero();
    let mut err = 0.0;
    for cell in cells.iter().filter(|c| !retired[c.id as usize]) {
        value += cell.value;
        err += cell.err;
    }
    (value, err)
}

/// Tensor-product rule over one box.
fn tensor_rule<F>(dim: usize, lo: &[f64], hi: &[f64], rule: &GaussRule, f: &F) -> Complex64
where
    F: Fn(&[f64]) -> Complex64,
{
    let n = rule.nodes.len();
    let mut point = vec![0.0f64; dim];
    let mut index = vec![0usize; dim];
    let mut jac = 1.0f64;
    for d in 0..dim {
        jac *= hi[d] - lo[d];
    }
    let mut acc = Complex64::zero();
    loop {
        let mut w = 1.0f64;
        for d in 0..dim {
            let t = rule.nodes[index[d]];
            point[d] = lo[d] + (hi[d] - lo[d]) * t;
            w *= rule.weights[index[d]];
        }
        acc += f(&point) * w;
        // Odometer increment.
        let mut d = 0;
        loop {
            index[d] += 1;
            if index[d] < n {
                break;
            }
            index[d] = 0;
            d += 1;
            if d == dim {
                return acc * jac;
            }
        }
    }
}
