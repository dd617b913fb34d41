use rug::{Complex, Float};
use serde::Serialize;
use twobridge::invariants::{longitude_l, longitude_l_from_lemma, Invariants};
use twobridge::numeric::{all_roots, cabs_f64};
use twobridge::rm::family::{reciprocal_center, trace_normalization};
use twobridge::rm::{rm_c2n4, trace_ratio_c2n4, RmEvaluator};
use twobridge::Result;

use crate::args::Format;
use crate::commands::{report_line, Context, Outcome};
use crate::pool;

/// Published transition angles, indexed by `n`.
pub const TABLE1_ALPHA0: [(i64, f64); 18] = [
    (1, 2.5741407781),
    (2, 2.8476422723),
    (3, 2.9424657544),
    (4, 2.9909391796),
    (5, 3.0204096324),
    (6, 3.0402286045),
    (7, 3.0544727854),
    (8, 3.0652052902),
    (9, 3.0735826570),
    (-1, 2.4071698136),
    (-2, 2.8082099376),
    (-3, 2.9251055596),
    (-4, 2.9812057191),
    (-5, 3.0141894961),
    (-6, 3.0359125478),
    (-7, 3.0513033433),
    (-8, 3.0627794492),
    (-9, 3.0716663560),
];

const SCHLAFLI_PANELS: usize = 200;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    fn within(name: &str, measured: f64, tolerance: f64) -> Self {
        Check { name: name.into(), pass: measured.is_finite() && measured <= tolerance, measured, tolerance }
    }
}

fn family(limit: i64) -> impl Iterator<Item = i64> {
    (-limit..=limit).filter(|&n| n != 0)
}

fn oracle_mismatches() -> Result<f64> {
    let mut bad = 0;
    for n in family(5) {
        let r = trace_ratio_c2n4(n);
        if !r.is_polynomial() || r.num.shift_m(trace_normalization(n)) != rm_c2n4(n)? {
            bad += 1;
        }
    }
    Ok(bad as f64)
}

fn reciprocal_mismatches() -> Result<f64> {
    let mut bad = 0;
    for n in family(8) {
        let p = rm_c2n4(n)?;
        if p.reflect_m().shift_m(2 * reciprocal_center(n)) != p {
            bad += 1;
        }
    }
    Ok(bad as f64)
}

/// Largest distance from a root's conjugate to the nearest root.
fn conjugate_defect(ctx: &Context) -> Result<f64> {
    let cfg = &ctx.cfg;
    let ns: Vec<i64> = family(8).collect();
    let per_n = pool::map(ctx.jobs, &ns, |&n| {
        let ev = RmEvaluator::new(n)?;
        let mut worst = 0f64;
        for a in [0.7, 1.9, 3.0] {
            let roots = all_roots(&ev.coefficients_at(&cfg.float(a)), cfg)?;
            for x in &roots {
                let c = Complex::with_val(cfg.prec(), x.conj_ref());
                let best = roots
                    .iter()
                    .map(|y| cabs_f64(&Complex::with_val(cfg.prec(), y - &c)) / cabs_f64(y).max(1.0))
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(best);
            }
        }
        Ok(worst)
    });
    per_n.into_iter().try_fold(0f64, |m, r: Result<f64>| Ok(m.max(r?)))
}

/// Relative disagreement of the two longitude formulas on a fixed set of
/// roots.
fn longitude_defect(ctx: &Context) -> Result<f64> {
    let cfg = &ctx.cfg;
    let mut worst = 0f64;
    for j in 0..50usize {
        let n = [1i64, -1, 2, -2, 3, -3, 4, -4][j % 8];
        let alpha = cfg.float(0.2 + 2.9 * j as f64 / 50.0);
        let roots = all_roots(&RmEvaluator::new(n)?.coefficients_at(&alpha), cfg)?;
        let x = &roots[(7 * j) % roots.len()];
        let a = longitude_l(x, &alpha)?;
        let b = longitude_l_from_lemma(n, x, &alpha)?;
        worst = worst.max(cabs_f64(&Complex::with_val(cfg.prec(), &a - &b)) / cabs_f64(&a));
    }
    Ok(worst)
}

/// `|dVol/dalpha + l_alpha / 2|` by central differences at ten interior
/// angles of each knot.
fn schlafli_defect(ctx: &Context, geos: &[(i64, Invariants)]) -> Result<f64> {
    let cfg = &ctx.cfg;
    let panels = ctx.panels.unwrap_or(SCHLAFLI_PANELS);
    let h = 1e-4;
    let cells: Vec<(usize, usize)> = (0..geos.len()).flat_map(|i| (1..=10).map(move |j| (i, j))).collect();
    let defects = pool::map(ctx.jobs, &cells, |&(i, j)| {
        let inv = &geos[i].1;
        let a = inv.geometry().alpha0().to_f64() * j as f64 / 11.0;
        let vp = inv.volume(&cfg.float(a + h), panels)?;
        let vm = inv.volume(&cfg.float(a - h), panels)?;
        let dv = Float::with_val(cfg.prec(), vp - vm).to_f64() / (2.0 * h);
        let alpha = cfg.float(a);
        let x = inv.geometry().hyperbolic_x(&alpha)?;
        let log_l = Float::with_val(cfg.prec(), longitude_l(&x, &alpha)?.abs_ref()).ln().to_f64();
        Ok((dv + log_l).abs())
    });
    defects.into_iter().try_fold(0f64, |m, r: Result<f64>| Ok(m.max(r?)))
}

pub fn run(ctx: &mut Context) -> Result<Outcome> {
    let mut checks = vec![
        Check::within("recursion equals trace oracle, |n| <= 5", oracle_mismatches()?, 0.0),
        Check::within("reciprocal M <-> 1/M symmetry, |n| <= 8", reciprocal_mismatches()?, 0.0),
        Check::within("conjugate roots, |n| <= 8", conjugate_defect(ctx)?, 1e-30),
        Check::within("longitude formula vs lemma, 50 samples", longitude_defect(ctx)?, 2f64.powi(-128)),
    ];

    let ns: Vec<i64> = TABLE1_ALPHA0.iter().map(|r| r.0).collect();
    let geos = ctx.geometries(&ns)?;
    let mut worst = 0f64;
    let mut schlafli = Vec::new();
    for ((n, expect), g) in TABLE1_ALPHA0.iter().zip(geos) {
        let geo = g?;
        worst = worst.max((geo.alpha0().to_f64() - expect).abs());
        if [1, -1, 2].contains(n) {
            schlafli.push((*n, Invariants::new(geo)?));
        }
    }
    checks.push(Check::within("alpha_0 regression, 18 rows", worst, 1e-8));
    checks.push(Check::within("Schlafli finite difference, n = 1, -1, 2", schlafli_defect(ctx, &schlafli)?, 1e-6));

    let failed = checks.iter().any(|c| !c.pass);
    let text = match ctx.format {
        Format::Json => serde_json::to_string_pretty(&checks).expect("plain data serializes") + "\n",
        Format::Csv => {
            let mut out = String::new();
            for c in &checks {
                report_line(&mut out, c.pass, &c.name, &format!("measured {:.3e}, tolerance {:.1e}", c.measured, c.tolerance));
            }
            out
        }
    };
    Ok(Outcome { text, failed })
}
