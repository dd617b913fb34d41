use std::fmt::Write as _;

use rug::float::Constant;
use rug::Float;
use serde::Serialize;
use twobridge::geometry::ConeGeometry;
use twobridge::invariants::{profile_csv, Invariants, ResultJson, PROFILE_HEADER};
use twobridge::numeric::{decimal, digits_for_bits, PrecisionConfig};
use twobridge::{Error, Result};

use crate::args::{Format, Global};
use crate::cache::{self, Alpha0Cache};
use crate::pool;

pub const TABLE1_PANELS: usize = 10_000;
pub const TABLE2_PANELS: usize = 100;
pub const PROFILE_PANELS: usize = 64;

/// Text to print and the exit status that goes with it.
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

pub struct Context {
    pub cfg: PrecisionConfig,
    pub digits: usize,
    pub format: Format,
    pub jobs: usize,
    pub panels: Option<usize>,
    pub cache: Alpha0Cache,
}

impl Context {
    pub fn new(g: &Global) -> Result<Self> {
        let cfg = PrecisionConfig::new(g.bits)?;
        if let Some(p) = g.panels {
            if p < 2 || p % 2 != 0 {
                return Err(Error::Config(format!("--panels must be even and at least 2, got {p}")));
            }
        }
        if g.jobs == Some(0) {
            return Err(Error::Config("--jobs must be positive".into()));
        }
        Ok(Context {
            digits: g.digits.unwrap_or_else(|| digits_for_bits(g.bits)).max(1),
            format: g.format,
            jobs: g.jobs.unwrap_or_else(pool::default_jobs),
            panels: g.panels,
            cache: Alpha0Cache::open(g.cache.as_deref())?,
            cfg,
        })
    }

    fn panels_or(&self, default: usize) -> usize {
        self.panels.unwrap_or(default)
    }

    fn dec(&self, v: &Float) -> String {
        decimal(v, self.digits)
    }

    /// Geometries for all `ns`, computed in parallel; the cache is consulted
    /// and updated from this thread only.
    pub fn geometries(&mut self, ns: &[i64]) -> Result<Vec<Result<ConeGeometry>>> {
        let hints: Vec<(i64, Option<Float>)> = ns.iter().map(|&n| (n, self.cache.lookup(n, &self.cfg))).collect();
        let cfg = &self.cfg;
        let out = pool::map(self.jobs, &hints, |(n, hint)| cache::geometry(*n, hint.as_ref(), cfg));
        for geo in out.iter().flatten() {
            self.cache.insert(geo);
        }
        self.cache.save()?;
        Ok(out)
    }

    pub fn geometry(&mut self, n: i64) -> Result<ConeGeometry> {
        self.geometries(&[n])?.pop().expect("one geometry per n")
    }
}

/// One row of a table; reals are decimal strings.
#[derive(Debug, Clone, Default, Serialize)]
pub struct TableRow {
    pub n: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vol: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cs_cover: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vol_cover: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn cell(v: &Option<String>) -> &str {
    v.as_deref().unwrap_or("-")
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes") + "\n"
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = format!("{header}\n");
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn twists(only: &[i64], n_max: i64) -> Result<Vec<i64>> {
    let ns: Vec<i64> = if only.is_empty() {
        if n_max < 1 {
            return Err(Error::Config("--n-max must be at least 1".into()));
        }
        (1..=n_max).chain((1..=n_max).map(|n| -n)).collect()
    } else {
        only.to_vec()
    };
    if ns.contains(&0) {
        return Err(Error::InvalidKnot("C(0,4) is not in the family".into()));
    }
    Ok(ns)
}

pub fn parse_real(s: &str, cfg: &PrecisionConfig) -> Result<Float> {
    Float::parse(s)
        .map(|v| Float::with_val(cfg.prec(), v))
        .map_err(|e| Error::Config(format!("not a number: {s:?} ({e})")))
}

fn two_pi_over(k: u32, cfg: &PrecisionConfig) -> Result<Float> {
    if k == 0 {
        return Err(Error::Config("k must be positive".into()));
    }
    Ok(Float::with_val(cfg.prec(), Float::with_val(cfg.prec(), Constant::Pi) * 2u32) / k)
}

pub fn table1(ctx: &mut Context, only: &[i64], n_max: i64) -> Result<Outcome> {
    let ns = twists(only, n_max)?;
    let panels = ctx.panels_or(TABLE1_PANELS);
    let geos = ctx.geometries(&ns)?;
    let results = pool::map(ctx.jobs, &geos, |g| {
        let geo = g.as_ref().map_err(Clone::clone)?;
        let cs = Invariants::new(geo.clone())?.chern_simons_complete(panels)?;
        Ok::<_, Error>((geo.alpha0().clone(), cs.value))
    });
    let mut failed = false;
    let mut rows = Vec::new();
    for (n, r) in ns.iter().zip(results) {
        let mut row = TableRow { n: *n, ..Default::default() };
        match r {
            Ok((a0, cs)) => {
                row.alpha0 = Some(ctx.dec(&a0));
                row.cs = Some(ctx.dec(&cs));
            }
            Err(e) => {
                eprintln!("n = {n}: {e}");
                if let Ok(geo) = &geos[rows.len()] {
                    row.alpha0 = Some(ctx.dec(geo.alpha0()));
                }
                row.error = Some(e.to_string());
                failed = true;
            }
        }
        rows.push(row);
    }
    let text = match ctx.format {
        Format::Json => json(&rows),
        Format::Csv => csv(
            "twist,alpha0,cs",
            rows.iter().map(|r| vec![(2 * r.n).to_string(), cell(&r.alpha0).into(), cell(&r.cs).into()]),
        ),
    };
    Ok(Outcome { text, failed })
}

pub fn table2(ctx: &mut Context, only: &[i64], n_max: i64, k_min: u32, k_max: u32) -> Result<Outcome> {
    let ns = twists(only, n_max)?;
    if k_min == 0 || k_min > k_max {
        return Err(Error::Config(format!("empty or invalid k range {k_min}..={k_max}")));
    }
    let panels = ctx.panels_or(TABLE2_PANELS);
    let geos = ctx.geometries(&ns)?;
    let cells: Vec<(usize, u32)> = (0..ns.len()).flat_map(|i| (k_min..=k_max).map(move |k| (i, k))).collect();
    let results = pool::map(ctx.jobs, &cells, |&(i, k)| {
        let geo = geos[i].as_ref().map_err(Clone::clone)?;
        let mut inv = Invariants::new(geo.clone())?;
        let cs = inv.chern_simons(k, panels)?;
        let (vol_cover, cover) = inv.cyclic_cover(k, panels)?;
        let vol = Float::with_val(vol_cover.prec(), &vol_cover / k);
        Ok::<_, Error>((cs.value, cover.value, vol, vol_cover))
    });
    let mut failed = false;
    let mut rows = Vec::new();
    for (&(i, k), r) in cells.iter().zip(results) {
        let n = ns[i];
        let mut row = TableRow { n, k: Some(k), ..Default::default() };
        if let Ok(geo) = &geos[i] {
            row.alpha0 = Some(ctx.dec(geo.alpha0()));
        }
        match r {
            Ok((cs, cover, vol, vol_cover)) => {
                row.cs = Some(ctx.dec(&cs));
                row.cs_cover = Some(ctx.dec(&cover));
                row.vol = Some(ctx.dec(&vol));
                row.vol_cover = Some(ctx.dec(&vol_cover));
            }
            Err(Error::Regime(msg)) => row.error = Some(msg),
            Err(e) => {
                eprintln!("n = {n}, k = {k}: {e}");
                row.error = Some(e.to_string());
                failed = true;
            }
        }
        rows.push(row);
    }
    let text = match ctx.format {
        Format::Json => json(&rows),
        Format::Csv => csv(
            "n,k,cs,cs_cover",
            rows.iter().map(|r| {
                vec![r.n.to_string(), r.k.unwrap_or(0).to_string(), cell(&r.cs).into(), cell(&r.cs_cover).into()]
            }),
        ),
    };
    Ok(Outcome { text, failed })
}

pub fn alpha0(ctx: &mut Context, n: i64) -> Result<Outcome> {
    let geo = ctx.geometry(n)?;
    let text = match ctx.format {
        Format::Json => json(&ResultJson::new(n, None, geo.alpha0(), ctx.cfg.mantissa_bits)),
        Format::Csv => csv("n,alpha0", [vec![n.to_string(), ctx.dec(geo.alpha0())]]),
    };
    Ok(Outcome { text, failed: false })
}

pub fn volume(ctx: &mut Context, n: i64, alpha: Option<&str>, k: Option<u32>) -> Result<Outcome> {
    let alpha = match (alpha, k) {
        (Some(a), _) => parse_real(a, &ctx.cfg)?,
        (None, Some(k)) => two_pi_over(k, &ctx.cfg)?,
        (None, None) => return Err(Error::Config("one of --alpha or --k is required".into())),
    };
    if alpha < 0 {
        return Err(Error::Config("cone angle must be nonnegative".into()));
    }
    let panels = ctx.panels_or(TABLE1_PANELS);
    let inv = Invariants::new(ctx.geometry(n)?)?;
    let vol = inv.volume(&alpha, panels)?;
    let text = match ctx.format {
        Format::Json => {
            json(&ResultJson::new(n, k, inv.geometry().alpha0(), ctx.cfg.mantissa_bits).with_volume(&vol, panels))
        }
        Format::Csv => csv("n,alpha,vol", [vec![n.to_string(), ctx.dec(&alpha), ctx.dec(&vol)]]),
    };
    Ok(Outcome { text, failed: false })
}

pub fn cs(ctx: &mut Context, n: i64, k: Option<u32>) -> Result<Outcome> {
    let panels = ctx.panels_or(TABLE1_PANELS);
    let mut inv = Invariants::new(ctx.geometry(n)?)?;
    let (cs, cover) = match k {
        Some(k) => (inv.chern_simons(k, panels)?, Some(inv.cyclic_cover(k, panels)?.1)),
        None => (inv.chern_simons_complete(panels)?, None),
    };
    let text = match ctx.format {
        Format::Json => json(&ResultJson::new(n, k, inv.geometry().alpha0(), ctx.cfg.mantissa_bits).with_cs(&cs)),
        Format::Csv => {
            let modulus = format!("{}/{}", cs.modulus.numer(), cs.modulus.denom());
            let cover = cover.map_or_else(|| "-".to_string(), |c| ctx.dec(&c.value));
            let k = k.map_or_else(|| "-".to_string(), |k| k.to_string());
            csv("n,k,cs,cs_modulus,cs_cover", [vec![n.to_string(), k, ctx.dec(&cs.value), modulus, cover]])
        }
    };
    Ok(Outcome { text, failed: false })
}

pub fn profile(ctx: &mut Context, n: i64, from: &str, to: &str, points: usize) -> Result<Outcome> {
    let from = parse_real(from, &ctx.cfg)?;
    let to = parse_real(to, &ctx.cfg)?;
    let panels = ctx.panels_or(PROFILE_PANELS);
    let inv = Invariants::new(ctx.geometry(n)?)?;
    let rows = inv.profile(&from, &to, points, panels)?;
    let text = match ctx.format {
        Format::Csv => profile_csv(&rows, ctx.digits),
        Format::Json => {
            let keys: Vec<&str> = PROFILE_HEADER.split(',').collect();
            let objs: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|r| {
                    let vals = [&r.alpha, r.x.real(), r.x.imag(), &r.log_abs_l, &r.l_alpha, &r.vol_partial, &r.beta];
                    let mut m = serde_json::Map::new();
                    for (key, v) in keys.iter().zip(vals) {
                        m.insert(key.to_string(), ctx.dec(v).into());
                    }
                    m.insert("regime".into(), r.regime.to_string().into());
                    m
                })
                .collect();
            json(&objs)
        }
    };
    Ok(Outcome { text, failed: false })
}

/// Appends one aligned report line.
pub fn report_line(out: &mut String, pass: bool, name: &str, detail: &str) {
    let _ = writeln!(out, "{} {name:<44} {detail}", if pass { "PASS" } else { "FAIL" });
}
