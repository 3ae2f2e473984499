//! Grid-backed query structure: build, O(1) query and the binary format.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fatness::{fatness_bounds, FatnessBounds};
use super::tagging::{
    line_edge_tags, sturm_cell_b_from_edges, sturm_cell_from_edges, tag_cell_from_edges, tag_thresholds,
    CellTag, GridCell,
};
use crate::algebra::zpoly::ZPoly;
use crate::algebra::{restrict_characteristic_exact, to_rational, ExactNetwork};
use crate::error::{Error, Result};
use crate::model::Network;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    A,
    B,
    C,
    #[serde(rename = "colinear")]
    Colinear,
}

impl Scheme {
    pub fn code(self) -> u8 {
        match self {
            Scheme::A => 0,
            Scheme::B => 1,
            Scheme::C => 2,
            Scheme::Colinear => 3,
        }
    }

    pub fn from_code(c: u8) -> Option<Self> {
        [Scheme::A, Scheme::B, Scheme::C, Scheme::Colinear].get(c as usize).copied()
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Scheme::A),
            "B" | "b" => Ok(Scheme::B),
            "C" | "c" => Ok(Scheme::C),
            "colinear" | "collinear" => Ok(Scheme::Colinear),
            _ => Err(Error::Precondition(format!("unknown scheme {s:?}"))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::A => "A",
            Scheme::B => "B",
            Scheme::C => "C",
            Scheme::Colinear => "colinear",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QdsConfig {
    /// Constants of Scheme A's spacing denominator 8 (c1 + c2) n^4 phi.
    pub c1: f64,
    pub c2: f64,
    /// Builds needing more cells than this fail with `GridTooLarge`.
    pub max_cells: u64,
}

impl Default for QdsConfig {
    fn default() -> Self {
        QdsConfig { c1: 1.0, c2: 1.0, max_cells: 1 << 24 }
    }
}

const EPS_BITS: i32 = 10;
const GAMMA_BITS: i32 = 8;

/// Rounds epsilon to the nearest multiple of 2^-10 so the tagging
/// thresholds are exact rationals.
pub fn snap_epsilon(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Precondition(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let s = 2f64.powi(EPS_BITS);
    Ok(((eps * s).round() / s).clamp(1.0 / s, 1.0 - 1.0 / s))
}

/// Largest number <= g with an 8-bit mantissa. Short dyadic spacings keep
/// the exact line polynomials small.
fn snap_down(g: f64) -> f64 {
    let e = g.log2().floor() as i32;
    let unit = 2f64.powi(e - GAMMA_BITS);
    (g / unit).floor() * unit
}

/// Grid spacing for `scheme`, given the extent radius used for the fatness
/// ratio.
pub fn grid_spacing(
    net: &Network,
    i: usize,
    scheme: Scheme,
    eps: f64,
    delta_hat: f64,
    cfg: &QdsConfig,
) -> Result<f64> {
    let fb = fatness_bounds(net, i)?;
    let n = net.n() as f64;
    let phi = delta_hat / fb.rho_hat;
    let g = match scheme {
        Scheme::Colinear => eps * fb.rho_hat / (8.0 * n * phi),
        Scheme::A => eps * fb.rho_hat / (8.0 * (cfg.c1 + cfg.c2) * n.powi(4) * phi),
        Scheme::B => eps / SQRT_2,
        Scheme::C => {
            // Smallest inscribed-radius bound over all stations, so the decay
            // estimate also covers cells near weak interferers.
            let mut rho = fb.rho_hat;
            for j in 0..net.n() {
                rho = rho.min(fatness_bounds(net, j)?.rho_hat);
            }
            eps * rho / (3.0 * SQRT_2)
        }
    };
    Ok(snap_down(g))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Qds {
    pub station: usize,
    pub scheme: Scheme,
    pub epsilon: f64,
    pub gamma: f64,
    pub origin: [f64; 2],
    pub width: u32,
    pub height: u32,
    tags: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct TagCounts {
    pub plus: u64,
    pub minus: u64,
    pub question: u64,
}

/// Everything the per-cell tagging rule depends on.
struct Ctx {
    station: usize,
    scheme: Scheme,
    ox: f64,
    oy: f64,
    gamma: f64,
    delta_hat: f64,
    rho: Vec<f64>,
    pos: Vec<[f64; 2]>,
    disjoint: bool,
}

const PRE_COMPUTE: u8 = 0;
const PRE_PLUS: u8 = 1;
const PRE_MINUS: u8 = 2;

impl Ctx {
    fn new(net: &Network, i: usize, scheme: Scheme, gamma: f64, origin: [f64; 2], delta_hat: f64) -> Result<Self> {
        let rho = (0..net.n()).map(|j| fatness_bounds(net, j).map(|f| f.rho_hat)).collect::<Result<_>>()?;
        Ok(Ctx {
            station: i,
            scheme,
            ox: origin[0],
            oy: origin[1],
            gamma,
            delta_hat,
            rho,
            pos: net.stations.iter().map(|s| [s.pos[0], s.pos[1]]).collect(),
            disjoint: net.beta >= 1.0,
        })
    }

    fn cell_dist(&self, cx: u32, cy: u32, s: [f64; 2]) -> f64 {
        let x0 = self.ox + cx as f64 * self.gamma;
        let y0 = self.oy + cy as f64 * self.gamma;
        let dx = (x0 - s[0]).max(0.0).max(s[0] - (x0 + self.gamma));
        let dy = (y0 - s[1]).max(0.0).max(s[1] - (y0 + self.gamma));
        dx.hypot(dy)
    }

    fn pre_status(&self, cx: u32, cy: u32) -> u8 {
        let shrink = 1.0 - 1e-9;
        let i = self.station;
        let inner = self.rho[i] - SQRT_2 * self.gamma;
        let di = self.cell_dist(cx, cy, self.pos[i]);
        if inner > 0.0 && di <= inner * shrink {
            return PRE_PLUS;
        }
        if di > self.delta_hat * (1.0 + 1e-9) {
            return PRE_MINUS;
        }
        if self.disjoint {
            for j in (0..self.pos.len()).filter(|&j| j != i) {
                if self.cell_dist(cx, cy, self.pos[j]) <= self.rho[j] * shrink {
                    return PRE_MINUS;
                }
            }
        }
        PRE_COMPUTE
    }

    fn combine(&self, per_threshold: &[[CellTag; 4]]) -> CellTag {
        match self.scheme {
            Scheme::A => sturm_cell_from_edges(&per_threshold[0]),
            Scheme::B | Scheme::Colinear => sturm_cell_b_from_edges(&per_threshold[0]),
            Scheme::C => tag_cell_from_edges(&per_threshold[0], &per_threshold[1]),
        }
    }
}

fn thresholds(x: &ExactNetwork, scheme: Scheme, eps: f64) -> Result<Vec<BigRational>> {
    Ok(match scheme {
        Scheme::C => {
            let (hi, lo) = tag_thresholds(x, &to_rational(eps)?);
            vec![hi, lo]
        }
        _ => vec![x.beta.clone()],
    })
}

fn collinear(x: &ExactNetwork) -> bool {
    let p = &x.positions;
    let (a, b) = (&p[0], &p[1]);
    p.iter().skip(2).all(|c| {
        (&b[0] - &a[0]) * (&c[1] - &a[1]) == (&b[1] - &a[1]) * (&c[0] - &a[0])
    })
}

struct LineEdges {
    start: i64,
    /// One tag vector per threshold.
    tags: Vec<Vec<CellTag>>,
}

impl LineEdges {
    fn get(&self, t: usize, k: u32) -> CellTag {
        self.tags[t][(k as i64 - self.start) as usize]
    }
}

fn big(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

pub fn qds_build(net: &Network, i: usize, scheme: Scheme, eps: f64, extent: Option<f64>) -> Result<Qds> {
    qds_build_with(net, i, scheme, eps, extent, &QdsConfig::default())
}

pub fn qds_build_with(
    net: &Network,
    i: usize,
    scheme: Scheme,
    eps: f64,
    extent: Option<f64>,
    cfg: &QdsConfig,
) -> Result<Qds> {
    net.check_station(i)?;
    if net.dim != 2 {
        return Err(Error::Dimension { expected: 2, got: net.dim });
    }
    let eps = snap_epsilon(eps)?;
    let x = ExactNetwork::new(net)?;
    if scheme == Scheme::Colinear && !collinear(&x) {
        return Err(Error::Precondition("the colinear scheme needs collinear stations".into()));
    }
    let fb: FatnessBounds = fatness_bounds(net, i)?;
    let delta_hat = match extent {
        Some(e) if e.is_finite() && e > 0.0 => e,
        Some(e) => return Err(Error::Precondition(format!("extent must be positive, got {e}"))),
        None if fb.is_bounded() => fb.delta_hat,
        None => return Err(Error::Unbounded("noise is zero, so an explicit extent is required".into())),
    };
    let gamma = grid_spacing(net, i, scheme, eps, delta_hat, cfg)?;
    let k = (delta_hat / gamma).ceil() + 1.0;
    let cells = (2.0 * k) * (2.0 * k);
    if !(cells <= cfg.max_cells as f64) {
        return Err(Error::GridTooLarge { cells: cells.min(u128::MAX as f64) as u128, limit: cfg.max_cells });
    }
    let k = k as i64;
    let (w, h) = (2 * k as u32, 2 * k as u32);
    let s = net.pos(i);
    let origin = [s[0] - k as f64 * gamma, s[1] - k as f64 * gamma];
    let ctx = Ctx::new(net, i, scheme, gamma, origin, delta_hat)?;

    let status: Vec<u8> = (0..h)
        .into_par_iter()
        .flat_map_iter(|cy| (0..w).map(move |cx| (cx, cy)).collect::<Vec<_>>())
        .map(|(cx, cy)| ctx.pre_status(cx, cy))
        .collect();
    let st = |cx: u32, cy: u32| status[(cy * w + cx) as usize];

    // Index ranges of the edges that some computed cell needs.
    let span = |cells: &mut dyn Iterator<Item = u32>| -> Option<(i64, i64)> {
        let mut lo = None;
        let mut hi = None;
        for c in cells {
            lo = Some(lo.map_or(c, |l: u32| l.min(c)));
            hi = Some(hi.map_or(c, |x: u32| x.max(c)));
        }
        Some((lo? as i64, hi? as i64 + 1))
    };
    let hor_ranges: Vec<Option<(i64, i64)>> = (0..=h)
        .map(|j| {
            let rows: Vec<u32> = [j.checked_sub(1), (j < h).then_some(j)].into_iter().flatten().collect();
            span(&mut (0..w).filter(|&cx| rows.iter().any(|&r| st(cx, r) == PRE_COMPUTE)))
        })
        .collect();
    let ver_ranges: Vec<Option<(i64, i64)>> = (0..=w)
        .map(|c| {
            let cols: Vec<u32> = [c.checked_sub(1), (c < w).then_some(c)].into_iter().flatten().collect();
            span(&mut (0..h).filter(|&cy| cols.iter().any(|&q| st(q, cy) == PRE_COMPUTE)))
        })
        .collect();

    let thr = thresholds(&x, scheme, eps)?;
    let g = to_rational(gamma)?;
    let (ox, oy) = (to_rational(origin[0])?, to_rational(origin[1])?);
    let zero = BigRational::from_integer(0.into());
    let line = |p1: Vec<BigRational>, v: Vec<BigRational>, r: (i64, i64)| -> LineEdges {
        let parts = x.parts_on_line(i, &p1, &v);
        let tags = thr.iter().map(|b| line_edge_tags(&ZPoly::from_rational(&parts.at(b)), r.0, r.1)).collect();
        LineEdges { start: r.0, tags }
    };
    let hor: Vec<Option<LineEdges>> = hor_ranges
        .par_iter()
        .enumerate()
        .map(|(j, r)| r.map(|r| line(vec![ox.clone(), &oy + &g * big(j as i64)], vec![g.clone(), zero.clone()], r)))
        .collect();
    let ver: Vec<Option<LineEdges>> = ver_ranges
        .par_iter()
        .enumerate()
        .map(|(c, r)| r.map(|r| line(vec![&ox + &g * big(c as i64), oy.clone()], vec![zero.clone(), g.clone()], r)))
        .collect();

    let mut qds = Qds {
        station: i,
        scheme,
        epsilon: eps,
        gamma,
        origin,
        width: w,
        height: h,
        tags: vec![0; ((w as usize) * (h as usize)).div_ceil(4)],
    };
    for cy in 0..h {
        for cx in 0..w {
            let tag = match st(cx, cy) {
                PRE_PLUS => CellTag::Plus,
                PRE_MINUS => CellTag::Minus,
                _ => {
                    let edges: Vec<[CellTag; 4]> = (0..thr.len())
                        .map(|t| {
                            let hb = hor[cy as usize].as_ref().expect("needed line");
                            let ht = hor[cy as usize + 1].as_ref().expect("needed line");
                            let vl = ver[cx as usize].as_ref().expect("needed line");
                            let vr = ver[cx as usize + 1].as_ref().expect("needed line");
                            [hb.get(t, cx), vr.get(t, cy), ht.get(t, cx), vl.get(t, cy)]
                        })
                        .collect();
                    ctx.combine(&edges)
                }
            };
            qds.set(cx, cy, tag);
        }
    }
    Ok(qds)
}

impl Qds {
    fn set(&mut self, cx: u32, cy: u32, tag: CellTag) {
        let k = cy as usize * self.width as usize + cx as usize;
        let shift = 2 * (k % 4);
        self.tags[k / 4] = (self.tags[k / 4] & !(0b11 << shift)) | (tag.bits() << shift);
    }

    pub fn tag(&self, cx: u32, cy: u32) -> CellTag {
        let k = cy as usize * self.width as usize + cx as usize;
        CellTag::from_bits((self.tags[k / 4] >> (2 * (k % 4))) & 0b11).unwrap_or(CellTag::Question)
    }

    /// The cell containing `p`, resolving grid lines to the smaller index.
    pub fn cell_of(&self, p: &[f64]) -> Option<(u32, u32)> {
        if p.len() != 2 {
            return None;
        }
        let cx = ((p[0] - self.origin[0]) / self.gamma).ceil() - 1.0;
        let cy = ((p[1] - self.origin[1]) / self.gamma).ceil() - 1.0;
        if cx < 0.0 || cy < 0.0 || cx >= self.width as f64 || cy >= self.height as f64 || cx.is_nan() || cy.is_nan()
        {
            return None;
        }
        Some((cx as u32, cy as u32))
    }

    pub fn query(&self, p: &[f64]) -> CellTag {
        match self.cell_of(p) {
            Some((cx, cy)) => self.tag(cx, cy),
            None => CellTag::Minus,
        }
    }

    /// Exact geometry of cell (cx, cy).
    pub fn cell(&self, cx: u32, cy: u32) -> GridCell {
        let g = BigRational::from_float(self.gamma).expect("finite");
        let ox = BigRational::from_float(self.origin[0]).expect("finite");
        let oy = BigRational::from_float(self.origin[1]).expect("finite");
        let x0 = ox + &g * big(cx as i64);
        let y0 = oy + &g * big(cy as i64);
        GridCell { x1: &x0 + &g, y1: &y0 + &g, x0, y0 }
    }

    /// Cell bounds in floating point: [x0, y0, x1, y1].
    pub fn cell_bounds(&self, cx: u32, cy: u32) -> [f64; 4] {
        let x0 = self.origin[0] + cx as f64 * self.gamma;
        let y0 = self.origin[1] + cy as f64 * self.gamma;
        [x0, y0, x0 + self.gamma, y0 + self.gamma]
    }

    /// Re-derives one cell's tag with the literal per-cell procedures.
    pub fn retag_cell(&self, net: &Network, extent: Option<f64>, cx: u32, cy: u32) -> Result<CellTag> {
        let fb = fatness_bounds(net, self.station)?;
        let delta_hat = extent.unwrap_or(fb.delta_hat);
        let ctx = Ctx::new(net, self.station, self.scheme, self.gamma, self.origin, delta_hat)?;
        match ctx.pre_status(cx, cy) {
            PRE_PLUS => return Ok(CellTag::Plus),
            PRE_MINUS => return Ok(CellTag::Minus),
            _ => {}
        }
        let x = ExactNetwork::new(net)?;
        let cell = self.cell(cx, cy);
        let per: Vec<[CellTag; 4]> = thresholds(&x, self.scheme, self.epsilon)?
            .iter()
            .map(|b| {
                cell.edges().map(|[p, q]| {
                    super::tagging::seg_test(
                        &restrict_characteristic_exact(&x, self.station, &p, &q, b).expect("non-degenerate edge"),
                    )
                })
            })
            .collect();
        Ok(ctx.combine(&per))
    }

    pub fn counts(&self) -> TagCounts {
        let mut c = TagCounts::default();
        for cy in 0..self.height {
            for cx in 0..self.width {
                match self.tag(cx, cy) {
                    CellTag::Plus => c.plus += 1,
                    CellTag::Minus => c.minus += 1,
                    CellTag::Question => c.question += 1,
                }
            }
        }
        c
    }

    /// Question-cell budget of the colinear scheme: 2n * 4 pi delta_hat / gamma.
    pub fn colinear_question_bound(&self, n: usize, delta_hat: f64) -> f64 {
        2.0 * n as f64 * 4.0 * std::f64::consts::PI * delta_hat / self.gamma
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut b = Vec::with_capacity(48 + self.tags.len());
        b.extend_from_slice(b"SQDS");
        b.extend_from_slice(&1u16.to_le_bytes());
        b.push(self.scheme.code());
        b.extend_from_slice(&(self.station as u32).to_le_bytes());
        b.extend_from_slice(&self.epsilon.to_le_bytes());
        b.extend_from_slice(&self.gamma.to_le_bytes());
        b.extend_from_slice(&self.origin[0].to_le_bytes());
        b.extend_from_slice(&self.origin[1].to_le_bytes());
        b.extend_from_slice(&self.width.to_le_bytes());
        b.extend_from_slice(&self.height.to_le_bytes());
        b.extend_from_slice(&self.tags);
        b
    }

    pub fn from_bytes(b: &[u8]) -> Result<Self> {
        let bad = |m: &str| Error::Format(m.to_string());
        const HEADER: usize = 4 + 2 + 1 + 4 + 8 * 4 + 4 * 2;
        if b.len() < HEADER {
            return Err(bad("truncated header"));
        }
        if &b[0..4] != b"SQDS" {
            return Err(bad("bad magic"));
        }
        let version = u16::from_le_bytes([b[4], b[5]]);
        if version != 1 {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let scheme = Scheme::from_code(b[6]).ok_or_else(|| bad("unknown scheme code"))?;
        let u32_at = |o: usize| u32::from_le_bytes(b[o..o + 4].try_into().expect("4 bytes"));
        let f64_at = |o: usize| f64::from_le_bytes(b[o..o + 8].try_into().expect("8 bytes"));
        let station = u32_at(7) as usize;
        let epsilon = f64_at(11);
        let gamma = f64_at(19);
        let origin = [f64_at(27), f64_at(35)];
        let (width, height) = (u32_at(43), u32_at(47));
        if width == 0 || height == 0 {
            return Err(bad("empty extent"));
        }
        if !(gamma.is_finite() && gamma > 0.0) || !origin.iter().all(|o| o.is_finite()) {
            return Err(bad("invalid grid geometry"));
        }
        let need = (width as usize * height as usize).div_ceil(4);
        let tags = &b[HEADER..];
        if tags.len() != need {
            return Err(Error::Format(format!("expected {need} tag bytes, found {}", tags.len())));
        }
        let qds = Qds { station, scheme, epsilon, gamma, origin, width, height, tags: tags.to_vec() };
        let cells = width as usize * height as usize;
        if (0..cells).any(|k| (qds.tags[k / 4] >> (2 * (k % 4))) & 0b11 == 0b11) {
            return Err(bad("invalid tag value"));
        }
        Ok(qds)
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}
