//! Raster maps of reception zones, SINR and QDS tags, written as PPM or SVG.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Network;
use crate::pointloc::{CellTag, Qds};
use crate::sinr::{heard_station, sinr, ReceptionTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RenderMode {
    Zones,
    SinrHeatmap,
    QdsTags,
}

impl FromStr for RenderMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "zones" => Ok(RenderMode::Zones),
            "sinr_heatmap" | "heatmap" | "sinr" => Ok(RenderMode::SinrHeatmap),
            "qds_tags" | "qds" | "tags" => Ok(RenderMode::QdsTags),
            _ => Err(Error::Precondition(format!("unknown render mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RenderSpec {
    /// x0, y0, x1, y1.
    pub bounds: [f64; 4],
    pub width: u32,
    pub height: u32,
    pub mode: RenderMode,
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        let b = self.bounds;
        if self.width == 0 || self.height == 0 {
            return Err(Error::Precondition("resolution must be positive".into()));
        }
        if !(b[2] > b[0] && b[3] > b[1]) || b.iter().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("bounds must have positive area".into()));
        }
        Ok(())
    }

    /// Center of pixel (px, py); row 0 is the top of the image.
    pub fn pixel_center(&self, px: u32, py: u32) -> [f64; 2] {
        let b = self.bounds;
        [
            b[0] + (px as f64 + 0.5) * (b[2] - b[0]) / self.width as f64,
            b[3] - (py as f64 + 0.5) * (b[3] - b[1]) / self.height as f64,
        ]
    }
}

/// Per-pixel class plus the colour of each class.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub width: u32,
    pub height: u32,
    pub classes: Vec<u32>,
    pub palette: Vec<[u8; 3]>,
    pub labels: Vec<String>,
}

const WHITE: [u8; 3] = [255, 255, 255];

fn station_color(k: usize) -> [u8; 3] {
    const BASE: [[u8; 3]; 10] = [
        [31, 119, 180],
        [255, 127, 14],
        [44, 160, 44],
        [214, 39, 40],
        [148, 103, 189],
        [140, 86, 75],
        [227, 119, 194],
        [127, 127, 127],
        [188, 189, 34],
        [23, 190, 207],
    ];
    let c = BASE[k % BASE.len()];
    // Darken on each pass through the palette.
    let f = 1.0 / (1.0 + (k / BASE.len()) as f64 * 0.35);
    [(c[0] as f64 * f) as u8, (c[1] as f64 * f) as u8, (c[2] as f64 * f) as u8]
}

/// Classifies every pixel. Zones: class 0 is the empty zone and class k + 1
/// station k. Heatmap: 64 levels of log10 SINR(s_i, .) over [-3, 3] about
/// log10 beta. QDS tags: minus, plus, question, outside the grid.
pub fn rasterize(net: &Network, spec: &RenderSpec, station: Option<usize>, qds: Option<&Qds>) -> Result<Raster> {
    spec.validate()?;
    if net.dim != 2 {
        return Err(Error::Dimension { expected: 2, got: net.dim });
    }
    let (w, h) = (spec.width, spec.height);
    let mut classes = Vec::with_capacity(w as usize * h as usize);
    let (palette, labels): (Vec<[u8; 3]>, Vec<String>) = match spec.mode {
        RenderMode::Zones => {
            for py in 0..h {
                for px in 0..w {
                    let p = spec.pixel_center(px, py);
                    classes.push(match heard_station(net, &p).tag {
                        ReceptionTag::Heard(k) => k as u32 + 1,
                        ReceptionTag::Silent => 0,
                    });
                }
            }
            let mut pal = vec![WHITE];
            let mut lab = vec!["empty".to_string()];
            for (k, s) in net.stations.iter().enumerate() {
                pal.push(station_color(k));
                lab.push(s.id.clone());
            }
            (pal, lab)
        }
        RenderMode::SinrHeatmap => {
            let i = station.ok_or_else(|| Error::Precondition("heatmap needs a station".into()))?;
            net.check_station(i)?;
            let centre = net.beta.log10();
            for py in 0..h {
                for px in 0..w {
                    let p = spec.pixel_center(px, py);
                    let v = match net.station_at(&p) {
                        Some(k) if k == i => f64::INFINITY,
                        Some(_) => 0.0,
                        None => sinr(net, i, &p)?,
                    };
                    let t = ((v.log10() - centre + 3.0) / 6.0).clamp(0.0, 1.0);
                    classes.push((t * 63.0).round() as u32);
                }
            }
            let pal = (0..64)
                .map(|k| {
                    let t = k as f64 / 63.0;
                    [(255.0 * t) as u8, (255.0 * (1.0 - (2.0 * t - 1.0).abs())) as u8, (255.0 * (1.0 - t)) as u8]
                })
                .collect();
            let lab = (0..64).map(|k| format!("log10 sinr {:+.2}", centre - 3.0 + 6.0 * k as f64 / 63.0)).collect();
            (pal, lab)
        }
        RenderMode::QdsTags => {
            let q = qds.ok_or_else(|| Error::Precondition("qds_tags mode needs a QDS".into()))?;
            for py in 0..h {
                for px in 0..w {
                    let p = spec.pixel_center(px, py);
                    classes.push(match q.cell_of(&p) {
                        None => 3,
                        Some(_) => match q.query(&p) {
                            CellTag::Minus => 0,
                            CellTag::Plus => 1,
                            CellTag::Question => 2,
                        },
                    });
                }
            }
            let pal = vec![[200, 200, 200], [46, 160, 67], [255, 165, 0], WHITE];
            let lab = ["minus", "plus", "question", "outside"].iter().map(|s| s.to_string()).collect();
            (pal, lab)
        }
    };
    Ok(Raster { width: w, height: h, classes, palette, labels })
}

impl Raster {
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.classes.len() * 3);
        for &c in &self.classes {
            out.extend_from_slice(&self.palette[c as usize]);
        }
        out
    }

    /// Rectangles per same-class run when the image has at most
    /// `rect_limit` pixels, marching-squares class contours otherwise.
    pub fn to_svg(&self, rect_limit: usize) -> String {
        let (w, h) = (self.width as usize, self.height as usize);
        let hex = |c: [u8; 3]| format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2]);
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" shape-rendering=\"crispEdges\">\n"
        );
        if w * h <= rect_limit {
            for y in 0..h {
                let row = &self.classes[y * w..(y + 1) * w];
                let mut x = 0;
                while x < w {
                    let c = row[x];
                    let start = x;
                    while x < w && row[x] == c {
                        x += 1;
                    }
                    let _ = writeln!(
                        s,
                        "<rect x=\"{start}\" y=\"{y}\" width=\"{}\" height=\"1\" fill=\"{}\"/>",
                        x - start,
                        hex(self.palette[c as usize])
                    );
                }
            }
        } else {
            let _ = writeln!(s, "<title>approximate contours</title>");
            let _ = writeln!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
            let mut present: Vec<u32> = self.classes.clone();
            present.sort_unstable();
            present.dedup();
            for c in present {
                let d = contour_path(&self.classes, w, h, c);
                if !d.is_empty() {
                    let _ = writeln!(
                        s,
                        "<path data-class=\"{}\" d=\"{d}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1\"/>",
                        self.labels[c as usize],
                        hex(self.palette[c as usize])
                    );
                }
            }
            let _ = writeln!(s, "<text x=\"4\" y=\"14\" font-size=\"12\">approximate</text>");
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Marching squares over pixel centers on the indicator of class `c`, with
/// midpoint interpolation.
fn contour_path(classes: &[u32], w: usize, h: usize, c: u32) -> String {
    let on = |x: usize, y: usize| classes[y * w + x] == c;
    let mut d = String::new();
    if w < 2 || h < 2 {
        return d;
    }
    for y in 0..h - 1 {
        for x in 0..w - 1 {
            let idx = (on(x, y) as u8) << 3 | (on(x + 1, y) as u8) << 2 | (on(x + 1, y + 1) as u8) << 1 | on(x, y + 1) as u8;
            if idx == 0 || idx == 15 {
                continue;
            }
            let (fx, fy) = (x as f64 + 0.5, y as f64 + 0.5);
            let top = (fx + 0.5, fy);
            let right = (fx + 1.0, fy + 0.5);
            let bottom = (fx + 0.5, fy + 1.0);
            let left = (fx, fy + 0.5);
            let segs: &[((f64, f64), (f64, f64))] = match idx {
                1 | 14 => &[(left, bottom)],
                2 | 13 => &[(bottom, right)],
                3 | 12 => &[(left, right)],
                4 | 11 => &[(top, right)],
                5 => &[(left, top), (bottom, right)],
                6 | 9 => &[(top, bottom)],
                7 | 8 => &[(left, top)],
                10 => &[(top, right), (left, bottom)],
                _ => &[],
            };
            for (a, b) in segs {
                let _ = write!(d, "M{} {}L{} {}", a.0, a.1, b.0, b.1);
            }
        }
    }
    d
}
