//! The `sinr-diagram` command line. `run` returns the process exit code:
//! 0 success, 1 usage or input error, 2 verification failure, 3 infeasible
//! construction.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::diagram1d::{count_cells_1d, empty_zone_intervals, reception_intervals};
use crate::error::{Error, Result};
use crate::geometry::{
    construct_log_wires, construct_omega_n, count_cells_2d, count_cells_2d_auto, two_station_config, CellTarget,
};
use crate::model::Network;
use crate::pointloc::{qds_build, Qds, Scheme};
use crate::render::{rasterize, RenderMode, RenderSpec};
use crate::sinr::{is_heard, sinr};
use crate::verify::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sinr-diagram", version, about = "SINR reception diagrams: evaluation, maps, point location, checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// SINR of a station at a point, and whether it is heard there.
    Eval {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        station: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Render zones, an SINR heatmap or QDS tags.
    Map(MapArgs),
    /// Exact reception intervals of a 1D network.
    Intervals {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        station: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count connected cells: exact in 1D, grid flood fill in 2D.
    CountCells(CountArgs),
    /// Build or query a point-location structure.
    #[command(subcommand)]
    Qds(QdsCommand),
    /// Explicit networks with known zone structure.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Run a seeded randomized verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print every instance rather than only failures.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args, Debug)]
struct MapArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    bounds: String,
    #[arg(long, default_value = "256x256")]
    res: String,
    #[arg(long, default_value = "zones")]
    mode: String,
    /// Station for the heatmap and qds_tags modes.
    #[arg(long)]
    station: Option<String>,
    /// Prebuilt QDS file for qds_tags; otherwise one is built.
    #[arg(long)]
    qds: Option<PathBuf>,
    #[arg(long, default_value = "C")]
    scheme: String,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    network: PathBuf,
    /// Station id or index; omit with --empty for the empty zone.
    #[arg(long)]
    station: Option<String>,
    #[arg(long)]
    empty: bool,
    #[arg(long, default_value_t = 0.1)]
    grid_step: f64,
    #[arg(long, allow_hyphen_values = true)]
    bounds: Option<String>,
    /// Admit boundary cells proved inside by SturmCellB.
    #[arg(long)]
    refine: bool,
    /// Halve the step until two consecutive levels agree.
    #[arg(long)]
    auto: bool,
}

#[derive(Subcommand, Debug)]
enum QdsCommand {
    /// Build a QDS and write it in the binary format.
    Build {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        station: String,
        #[arg(long, default_value = "C")]
        scheme: String,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Half-width of the grid when N = 0.
        #[arg(long)]
        extent: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tag of the cell containing a point.
    Query {
        #[arg(long)]
        qds: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// Closed-form zone of one station of a two-station network.
    TwoStation {
        #[arg(long)]
        network: PathBuf,
        #[arg(long, default_value = "0")]
        station: String,
    },
    /// Network whose strong station is heard in n + 1 cells.
    OmegaN {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_count: bool,
    },
    /// Concentric wires forcing rho + 1 cells along a ray.
    Wires {
        #[arg(long)]
        rho: usize,
        #[arg(long)]
        power: f64,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Ppm,
    Svg,
}

pub fn parse_point(s: &str) -> Result<Vec<f64>> {
    let v: std::result::Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match v {
        Ok(v) if !v.is_empty() && v.iter().all(|x| x.is_finite()) => Ok(v),
        _ => Err(Error::Precondition(format!("bad point '{s}'; expected x,y[,z]"))),
    }
}

pub fn parse_bounds(s: &str) -> Result<[f64; 4]> {
    let v = parse_point(s)?;
    match v.as_slice() {
        [a, b, c, d] => Ok([*a, *b, *c, *d]),
        _ => Err(Error::Precondition(format!("bad bounds '{s}'; expected x0,y0,x1,y1"))),
    }
}

pub fn parse_res(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::Precondition(format!("bad resolution '{s}'; expected WxH"));
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
}

fn write_out(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes)?;
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Infeasible(_) => EXIT_INFEASIBLE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Eval { network, station, point, format } => {
            let net = Network::load(&network)?;
            let i = net.station_index(&station)?;
            let p = parse_point(&point)?;
            net.check_point(&p)?;
            let heard = is_heard(&net, i, &p);
            let value = sinr(&net, i, &p)?;
            if format == Format::Json {
                writeln!(out, "{}", json!({"station": net.stations[i].id, "point": p, "sinr": value, "heard": heard}))?;
            } else {
                writeln!(out, "sinr: {value:.16e}")?;
                writeln!(out, "heard: {heard}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Map(a) => cmd_map(a, out),
        Command::Intervals { network, station, out: path } => {
            let net = Network::load(&network)?;
            let mut zones = serde_json::Map::new();
            let stations: Vec<usize> = match station {
                Some(s) => vec![net.station_index(&s)?],
                None => (0..net.n()).collect(),
            };
            for i in stations {
                zones.insert(net.stations[i].id.clone(), json!(reception_intervals(&net, i)?.to_json()));
            }
            let v = json!({"stations": zones, "empty": empty_zone_intervals(&net)?.to_json()});
            emit(out, path.as_deref(), &pretty(&v))?;
            Ok(EXIT_OK)
        }
        Command::CountCells(a) => cmd_count(a, out),
        Command::Qds(QdsCommand::Build { network, station, scheme, epsilon, extent, out: path }) => {
            let net = Network::load(&network)?;
            let i = net.station_index(&station)?;
            let scheme: Scheme = scheme.parse()?;
            let q = qds_build(&net, i, scheme, epsilon, extent)?;
            q.save(&path)?;
            let v = json!({
                "station": net.stations[i].id, "scheme": scheme.to_string(), "epsilon": q.epsilon,
                "gamma": q.gamma, "origin": q.origin, "width": q.width, "height": q.height, "counts": q.counts(),
            });
            writeln!(out, "{}", pretty(&v))?;
            Ok(EXIT_OK)
        }
        Command::Qds(QdsCommand::Query { qds, point }) => {
            let q = Qds::load(&qds)?;
            let p = parse_point(&point)?;
            if p.len() != 2 {
                return Err(Error::Dimension { expected: 2, got: p.len() });
            }
            writeln!(out, "{}", q.query(&p).name())?;
            Ok(EXIT_OK)
        }
        Command::Construct(c) => cmd_construct(c, out),
        Command::Verify { suite, trials, seed, out: path, full } => {
            let r = run_suite(&suite, trials, seed)?;
            let text = if full {
                pretty(&r)
            } else {
                let failed: Vec<_> = r.instances.iter().filter(|i| !i.pass).collect();
                pretty(&json!({"suite": r.suite, "seed": r.seed, "trials": r.trials, "pass": r.pass,
                                "failures": r.failures, "failed_instances": failed}))
            };
            emit(out, path.as_deref(), &text)?;
            Ok(if r.pass { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_out(p, format!("{text}\n").as_bytes()),
        None => Ok(writeln!(out, "{text}")?),
    }
}

fn cmd_map(a: MapArgs, out: &mut dyn Write) -> Result<i32> {
    let net = Network::load(&a.network)?;
    let (width, height) = parse_res(&a.res)?;
    let spec = RenderSpec { bounds: parse_bounds(&a.bounds)?, width, height, mode: a.mode.parse()? };
    let station = a.station.as_deref().map(|s| net.station_index(s)).transpose()?;
    let qds = match (spec.mode, &a.qds) {
        (RenderMode::QdsTags, Some(p)) => Some(Qds::load(p)?),
        (RenderMode::QdsTags, None) => Some(qds_build(&net, station.unwrap_or(0), a.scheme.parse()?, a.epsilon, None)?),
        _ => None,
    };
    let raster = rasterize(&net, &spec, station, qds.as_ref())?;
    let format = match a.format {
        Some(f) => f,
        None if a.out.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg")) => Format::Svg,
        None => Format::Ppm,
    };
    match format {
        Format::Ppm => write_out(&a.out, &raster.to_ppm())?,
        Format::Svg => write_out(&a.out, raster.to_svg(128 * 128).as_bytes())?,
        Format::Json => {
            let v = json!({"width": width, "height": height, "labels": raster.labels, "classes": raster.classes});
            write_out(&a.out, serde_json::to_string(&v).expect("serialisable").as_bytes())?
        }
        Format::Text => return Err(Error::Precondition("map output is ppm, svg or json".into())),
    }
    writeln!(out, "wrote {}", a.out.display())?;
    Ok(EXIT_OK)
}

fn cmd_count(a: CountArgs, out: &mut dyn Write) -> Result<i32> {
    let net = Network::load(&a.network)?;
    if net.dim == 1 {
        let c = count_cells_1d(&net)?;
        writeln!(out, "{}", pretty(&json!({"exact": true, "per_station": c.per_station, "total": c.total})))?;
        return Ok(EXIT_OK);
    }
    let target = match (a.empty, &a.station) {
        (true, None) => CellTarget::Empty,
        (false, Some(s)) => CellTarget::Station(net.station_index(s)?),
        _ => return Err(Error::Precondition("pass exactly one of --station or --empty".into())),
    };
    let bounds = a.bounds.as_deref().map(parse_bounds).transpose()?;
    let r = if a.auto {
        count_cells_2d_auto(&net, target, a.grid_step, bounds, a.refine, 6)?
    } else {
        count_cells_2d(&net, target, a.grid_step, bounds, a.refine)?
    };
    writeln!(out, "{}", pretty(&json!({"exact": false, "result": r})))?;
    Ok(EXIT_OK)
}

fn cmd_construct(c: ConstructCommand, out: &mut dyn Write) -> Result<i32> {
    match c {
        ConstructCommand::TwoStation { network, station } => {
            let net = Network::load(&network)?;
            let i = net.station_index(&station)?;
            let cfg = two_station_config(&net, i, net.noise == 0.0)?;
            writeln!(out, "{}", pretty(&cfg))?;
            Ok(EXIT_OK)
        }
        ConstructCommand::OmegaN { n, out: path, no_count } => {
            let (net, report) = construct_omega_n(n, 100, !no_count)?;
            match path {
                Some(p) => {
                    write_out(&p, net.to_json().as_bytes())?;
                    writeln!(out, "{}", pretty(&json!({"report": report})))?;
                }
                None => {
                    let network: serde_json::Value = serde_json::from_str(&net.to_json())?;
                    writeln!(out, "{}", pretty(&json!({"network": network, "report": report})))?;
                }
            }
            Ok(if report.pass { EXIT_OK } else { EXIT_VERIFY })
        }
        ConstructCommand::Wires { rho, power, noise } => {
            let (_, report) = construct_log_wires(rho, power, noise)?;
            writeln!(out, "{}", pretty(&report))?;
            Ok(if report.pass { EXIT_OK } else { EXIT_INFEASIBLE })
        }
    }
}
