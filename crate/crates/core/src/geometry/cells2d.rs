//! Grid flood-fill cell counting in the plane, plus the Milnor–Thom reference
//! numbers the counts can be compared against.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{to_rational, ExactNetwork};
use crate::error::{Error, Result};
use crate::model::Network;
use crate::pointloc::{fatness_bounds, sturm_cell_b, CellTag, GridCell};
use crate::sinr::{heard_station, is_heard, ReceptionTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellTarget {
    Station(usize),
    Empty,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellCountResult {
    pub count: usize,
    pub step: f64,
    pub bounds: [f64; 4],
    pub width: usize,
    pub height: usize,
    /// Sizes of the components in grid cells, largest first.
    pub component_sizes: Vec<usize>,
    /// Cells whose samples disagreed and were left out of every component.
    pub ambiguous: usize,
    /// Component label per cell, row-major from the lower left; 0 = outside.
    #[serde(skip)]
    pub labels: Vec<u32>,
}

impl CellCountResult {
    pub fn label(&self, cx: usize, cy: usize) -> u32 {
        self.labels[cy * self.width + cx]
    }
}

fn member(net: &Network, target: CellTarget, p: &[f64]) -> bool {
    match target {
        CellTarget::Station(i) => is_heard(net, i, p),
        CellTarget::Empty => net.station_at(p).is_none() && heard_station(net, p).tag == ReceptionTag::Silent,
    }
}

/// Default counting window: the box of half-width 1.01 * delta_hat about the
/// station. The empty zone is unbounded and always needs explicit bounds.
pub fn default_bounds(net: &Network, target: CellTarget) -> Result<[f64; 4]> {
    match target {
        CellTarget::Station(i) => {
            let fb = fatness_bounds(net, i)?;
            if !fb.is_bounded() {
                return Err(Error::Unbounded("zone is unbounded without noise; pass explicit bounds".into()));
            }
            let r = 1.01 * fb.delta_hat;
            let s = net.pos(i);
            Ok([s[0] - r, s[1] - r, s[0] + r, s[1] + r])
        }
        CellTarget::Empty => Err(Error::Unbounded("the empty zone is unbounded; pass explicit bounds".into())),
    }
}

/// Connected components of the target region on a grid of spacing `step`.
///
/// A grid cell belongs to the region when its center and four corners all
/// do. Cells whose samples disagree are ambiguous; with `refine` set (and an
/// even alpha) an ambiguous cell is admitted when SturmCellB proves it lies
/// inside Z_i. Connectivity is 4-neighbour.
pub fn count_cells_2d(
    net: &Network,
    target: CellTarget,
    step: f64,
    bounds: Option<[f64; 4]>,
    refine: bool,
) -> Result<CellCountResult> {
    if net.dim != 2 {
        return Err(Error::Precondition("count_cells_2d needs a planar network".into()));
    }
    if let CellTarget::Station(i) = target {
        net.check_station(i)?;
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Precondition("grid step must be positive".into()));
    }
    let b = match bounds {
        Some(b) => b,
        None => default_bounds(net, target)?,
    };
    if !(b[2] > b[0] && b[3] > b[1]) || b.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition("bounds must be a non-degenerate rectangle".into()));
    }
    let w = ((b[2] - b[0]) / step).ceil() as usize;
    let h = ((b[3] - b[1]) / step).ceil() as usize;
    if (w as u128) * (h as u128) > 1 << 28 {
        return Err(Error::GridTooLarge { cells: (w as u128) * (h as u128), limit: 1 << 28 });
    }
    let x = |k: usize| b[0] + k as f64 * step;
    let y = |k: usize| b[1] + k as f64 * step;

    let corners: Vec<bool> = (0..=h)
        .into_par_iter()
        .flat_map_iter(|ky| (0..=w).map(move |kx| member(net, target, &[x(kx), y(ky)])))
        .collect();
    let exact = match (refine, target) {
        (true, CellTarget::Station(_)) if net.half_alpha().is_some() => Some(ExactNetwork::new(net)?),
        _ => None,
    };
    let beta = to_rational(net.beta)?;
    let inside: Vec<Option<bool>> = (0..h)
        .into_par_iter()
        .flat_map_iter(|cy| {
            let corners = &corners;
            let exact = &exact;
            let beta = &beta;
            (0..w).map(move |cx| {
                let c = |dx: usize, dy: usize| corners[(cy + dy) * (w + 1) + cx + dx];
                let center = member(net, target, &[x(cx) + 0.5 * step, y(cy) + 0.5 * step]);
                let all = [c(0, 0), c(1, 0), c(0, 1), c(1, 1), center];
                if all.iter().all(|&v| v) {
                    return Some(true);
                }
                if all.iter().all(|&v| !v) {
                    return Some(false);
                }
                match (exact, target) {
                    (Some(xn), CellTarget::Station(i)) => {
                        let cell = grid_cell(x(cx), y(cy), x(cx + 1), y(cy + 1)).ok()?;
                        (sturm_cell_b(&cell, xn, i, beta) == CellTag::Plus).then_some(true)
                    }
                    _ => None,
                }
            })
        })
        .collect();
    let ambiguous = inside.iter().filter(|v| v.is_none()).count();

    let mut labels = vec![0u32; w * h];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..w * h {
        if labels[start] != 0 || inside[start] != Some(true) {
            continue;
        }
        let id = sizes.len() as u32 + 1;
        labels[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(k) = queue.pop_front() {
            size += 1;
            let (cx, cy) = (k % w, k / w);
            let mut push = |n: usize| {
                if labels[n] == 0 && inside[n] == Some(true) {
                    labels[n] = id;
                    queue.push_back(n);
                }
            };
            if cx > 0 {
                push(k - 1);
            }
            if cx + 1 < w {
                push(k + 1);
            }
            if cy > 0 {
                push(k - w);
            }
            if cy + 1 < h {
                push(k + w);
            }
        }
        sizes.push(size);
    }
    let count = sizes.len();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(CellCountResult { count, step, bounds: b, width: w, height: h, component_sizes: sizes, ambiguous, labels })
}

fn grid_cell(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<GridCell> {
    Ok(GridCell { x0: to_rational(x0)?, y0: to_rational(y0)?, x1: to_rational(x1)?, y1: to_rational(y1)? })
}

/// Halves the step from `initial_step` until two consecutive levels give the
/// same count, or `max_levels` levels have been tried.
pub fn count_cells_2d_auto(
    net: &Network,
    target: CellTarget,
    initial_step: f64,
    bounds: Option<[f64; 4]>,
    refine: bool,
    max_levels: usize,
) -> Result<CellCountResult> {
    let mut step = initial_step;
    let mut prev = count_cells_2d(net, target, step, bounds, refine)?;
    for _ in 1..max_levels.max(2) {
        step *= 0.5;
        let next = count_cells_2d(net, target, step, bounds, refine)?;
        if next.count == prev.count {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MilnorThomReference {
    /// Degree bound of the characteristic polynomial, alpha * n.
    pub degree: u64,
    /// K (2K - 1)^(d-1) with K = degree + 1, per station.
    pub per_station: f64,
    /// n times the per-station bound.
    pub total: f64,
    /// The same bound for the noise polynomial of degree alpha * n^2.
    pub empty_zone: f64,
}

/// Reference upper bounds on cell counts for `n` stations in dimension `d`
/// with even integer path-loss `alpha`.
pub fn milnor_thom_reference(n: usize, d: usize, alpha: u32) -> MilnorThomReference {
    let bound = |deg: u64| {
        let k = deg as f64 + 1.0;
        k * (2.0 * k - 1.0).powi(d.max(1) as i32 - 1)
    };
    let degree = alpha as u64 * n as u64;
    let per_station = bound(degree);
    MilnorThomReference {
        degree,
        per_station,
        total: n as f64 * per_station,
        empty_zone: bound(alpha as u64 * (n as u64).pow(2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric(beta: f64, noise: f64) -> Network {
        Network::from_parts(2, &[(vec![-1.0, 0.0], 1.0), (vec![1.0, 0.0], 1.0)], noise, beta, 2.0).unwrap()
    }

    #[test]
    fn two_station_disks() {
        let net = symmetric(1.5, 0.01);
        for i in 0..2 {
            let r = count_cells_2d(&net, CellTarget::Station(i), 0.05, None, false).unwrap();
            assert_eq!(r.count, 1);
        }
    }

    #[test]
    fn empty_zone_needs_bounds() {
        let net = symmetric(1.5, 0.01);
        assert!(matches!(count_cells_2d(&net, CellTarget::Empty, 0.1, None, false), Err(Error::Unbounded(_))));
        let r = count_cells_2d(&net, CellTarget::Empty, 0.1, Some([-4.0, -4.0, 4.0, 4.0]), false).unwrap();
        assert_eq!(r.count, 1);
        let quiet = symmetric(1.5, 0.0);
        assert!(count_cells_2d(&quiet, CellTarget::Station(0), 0.1, None, false).is_err());
    }

    #[test]
    fn refinement_never_lowers_membership() {
        let net = Network::from_parts(
            2,
            &[(vec![0.0, 0.0], 2.0), (vec![1.5, 0.5], 1.0), (vec![-1.0, 1.0], 1.0)],
            0.1,
            1.2,
            2.0,
        )
        .unwrap();
        let plain = count_cells_2d(&net, CellTarget::Station(0), 0.1, None, false).unwrap();
        let refined = count_cells_2d(&net, CellTarget::Station(0), 0.1, None, true).unwrap();
        assert_eq!(plain.count, 1);
        assert_eq!(refined.count, 1);
        assert!(refined.ambiguous <= plain.ambiguous);
        assert!(refined.component_sizes[0] >= plain.component_sizes[0]);
    }

    #[test]
    fn milnor_thom_numbers() {
        let r = milnor_thom_reference(3, 2, 2);
        assert_eq!(r.degree, 6);
        assert_eq!(r.per_station, 7.0 * 13.0);
        assert_eq!(r.total, 273.0);
        assert_eq!(milnor_thom_reference(3, 1, 2).per_station, 7.0);
    }
}
