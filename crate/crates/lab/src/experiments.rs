//! The experiment drivers. Each turns a config into report rows; the rows
//! come out in sweep order and, with `timing` off, are byte-for-byte
//! reproducible.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use sumprod::arith::Factorizer;
use sumprod::degen::{ga_degeneracy, gm_degeneracy, hypersurface_degree};
use sumprod::finsets::{box_set, doubling};
use sumprod::patterns::{longest_ap, longest_gp, longest_square_ap, PatternReport};
use sumprod::structure::VarietySpec;
use sumprod::{Axis, Correspondence, FiniteSet, GroupDescriptor, GroupElement, MultiPoly, Rational, SubgroupBasis};

use crate::config::{Experiment, ExperimentConfig};
use crate::error::{LabError, LabResult};
use crate::json::ElementSpec;
use crate::par;
use crate::report::ReportRow;

pub fn run(cfg: &ExperimentConfig) -> LabResult<Vec<ReportRow>> {
    match cfg.experiment {
        Experiment::Bremner => bremner(cfg),
        Experiment::Expansion => expansion(cfg),
        Experiment::Eszabo => eszabo(cfg),
        Experiment::ElekesRonyai => elekes_ronyai(cfg),
        Experiment::Patterns => patterns(cfg),
        Experiment::Degeneracy => degeneracy(cfg),
    }
}

fn name(cfg: &ExperimentConfig) -> &'static str {
    match cfg.experiment {
        Experiment::Bremner => "bremner",
        Experiment::Expansion => "expansion",
        Experiment::Eszabo => "eszabo",
        Experiment::ElekesRonyai => "elekes_ronyai",
        Experiment::Patterns => "patterns",
        Experiment::Degeneracy => "degeneracy",
    }
}

/// Runs `body` once per sweep value and stamps each batch of rows with its
/// wall time, or 0 when timing is off.
fn sweep(
    cfg: &ExperimentConfig,
    values: &[i64],
    mut body: impl FnMut(i64) -> LabResult<Vec<ReportRow>>,
) -> LabResult<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for &n in values {
        let start = Instant::now();
        let mut batch = body(n)?;
        let ms = if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 };
        for r in &mut batch {
            r.runtime_ms = ms;
        }
        rows.extend(batch);
    }
    Ok(rows)
}

fn factorizer(cfg: &ExperimentConfig) -> Factorizer {
    Factorizer::new(cfg.budgets.factor_budget())
}

fn witness_text(r: &PatternReport) -> Option<String> {
    r.witness.as_ref().map(|(u, s)| format!("u={u}, step={s}"))
}

type Detector = fn(&[Rational]) -> sumprod::Result<PatternReport>;

fn pattern_rows(exp: &str, prefix: &str, param: i64, values: &[Rational]) -> LabResult<Vec<ReportRow>> {
    let detectors: [(&str, Detector); 3] =
        [("ap", longest_ap), ("gp", longest_gp), ("square_ap", longest_square_ap)];
    let mut rows = Vec::new();
    for (label, detect) in detectors {
        let label = format!("{prefix}{label}");
        let row = if values.is_empty() {
            ReportRow::new(exp, label, param, 0, 0)
        } else {
            let r = detect(values)?;
            let row = ReportRow::new(exp, label, param, values.len(), r.length as u64);
            match witness_text(&r) {
                Some(w) => row.with_detail(w),
                None => row,
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

fn sweep_param(n: i64) -> LabResult<u32> {
    u32::try_from(n)
        .ok()
        .filter(|&l| l >= 1)
        .ok_or_else(|| LabError::Config(format!("box side {n} must be a positive integer")))
}

type PointCache = BTreeMap<String, Vec<ElementSpec>>;

fn load_cache(path: Option<&Path>) -> LabResult<PointCache> {
    match path {
        Some(p) if p.exists() => {
            let text = std::fs::read_to_string(p)?;
            serde_json::from_str(&text).map_err(|e| LabError::Config(format!("point cache {}: {e}", p.display())))
        }
        _ => Ok(PointCache::new()),
    }
}

fn bremner(cfg: &ExperimentConfig) -> LabResult<Vec<ReportRow>> {
    let exp = name(cfg);
    let group = cfg.group()?;
    if !matches!(group, GroupDescriptor::Elliptic(_)) {
        return Err(LabError::Config("bremner needs an elliptic curve".into()));
    }
    let mut gens = Vec::new();
    for g in &cfg.generators {
        let p = match g {
            ElementSpec::Point { x, y } => GroupElement::affine(x.to_rational()?, y.to_rational()?),
            other => return Err(LabError::Config(format!("generator {other:?} is not an affine point"))),
        };
        if !group.on_group(&p) {
            return Err(LabError::OffCurveGenerator(format!("{p:?}")));
        }
        gens.push(p);
    }
    let basis = SubgroupBasis::new(group.clone(), gens).map_err(LabError::config)?;
    let cache_path = cfg.point_cache.as_deref();
    let mut cache = load_cache(cache_path)?;
    let curve_key = format!("{:?}|{:?}", group, cfg.generators);
    let x_proj = Correspondence::coord_proj(group.clone(), Axis::X)?;
    let y_proj = Correspondence::coord_proj(group.clone(), Axis::Y)?;

    let rows = sweep(cfg, &cfg.sweep, |l| {
        let side = sweep_param(l)?;
        let key = format!("{curve_key}|L={side}");
        let points = match cache.get(&key) {
            Some(pts) => FiniteSet::new(group.clone(), pts.iter().map(|p| p.to_element(&group)).collect::<LabResult<Vec<_>>>()?)
                .map_err(LabError::config)?,
            None => {
                let pts = box_set(&basis, side, None)?;
                cache.insert(key, pts.iter().map(ElementSpec::from_element).collect());
                pts
            }
        };
        let doubled = par::sumset(&points, &points)?.len() as i64;
        let k = Rational::new(doubled, points.len() as i64)?;
        let mut rows = vec![ReportRow::new(exp, "box", l, points.len(), doubled as u64).with_doubling(Some(k))];
        for (axis, proj) in [("X", &x_proj), ("Y", &y_proj)] {
            let values = proj.image(&points)?.values();
            rows.extend(pattern_rows(exp, &format!("{axis}:"), l, &values)?);
        }
        Ok(rows)
    })?;
    if let Some(p) = cache_path {
        std::fs::write(p, serde_json::to_string_pretty(&cache)?)?;
    }
    Ok(rows)
}

fn expansion(cfg: &ExperimentConfig) -> LabResult<Vec<ReportRow>> {
    let exp = name(cfg);
    let group = cfg.group()?;
    let set = cfg.set_spec()?;
    if cfg.correspondences.is_empty() {
        return Err(LabError::Config("expansion needs at least one correspondence".into()));
    }
    let mut cs = Vec::new();
    for spec in &cfg.correspondences {
        let c = spec.to_correspondence(&group)?;
        // Implicit curves cannot be classified and are let through.
        if c.is_subgroup_translate().unwrap_or(false) {
            return Err(LabError::TranslateCorrespondence(spec.describe()));
        }
        cs.push(c);
    }
    let g = match (cfg.g, cs.len()) {
        (Some(0), _) => return Err(LabError::Config("g must be at least 1".into())),
        (Some(g), 1) => g,
        (None, k) => k,
        (Some(g), k) if g == k => g,
        (Some(g), k) => return Err(LabError::Config(format!("g = {g} but {k} correspondences given"))),
    };
    if cs.len() == 1 {
        cs = vec![cs[0].clone(); g];
    }
    let label = cfg.correspondences.iter().map(|c| c.describe()).collect::<Vec<_>>().join(" + ");
    let f = factorizer(cfg);
    sweep(cfg, &cfg.sweep_values()?, |n| {
        let a = set.build(&group, n)?;
        let k = (!a.is_empty()).then(|| doubling(&a)).transpose()?;
        let ga = par::iterated(&a, g)?;
        let image = par::image_sum(&cs, &a, &f)?;
        if !a.is_empty() && ga.len().max(image.len()) < a.len() {
            return Err(sumprod::Error::Invariant(format!("max(|gA|, |image sum|) < |A| at n = {n}")).into());
        }
        Ok(vec![
            ReportRow::new(exp, "gA", n, a.len(), ga.len() as u64)
                .with_doubling(k.clone())
                .with_detail(format!("g={g}")),
            ReportRow::new(exp, "image_sum", n, a.len(), image.len() as u64)
                .with_doubling(k)
                .with_detail(format!("g={g}: {label}")),
        ])
    })
}

fn eszabo(cfg: &ExperimentConfig) -> LabResult<Vec<ReportRow>> {
    let exp = name(cfg);
    let group = cfg.group()?;
    let set = cfg.set_spec()?;
    let vc = cfg
        .variety
        .as_ref()
        .ok_or_else(|| LabError::Config("eszabo needs `variety`".into()))?;
    let v = VarietySpec::new(group.clone(), vc.num_vars, vc.equations()?, vc.dim).map_err(LabError::config)?;
    sweep(cfg, &cfg.sweep_values()?, |n| {
        let a = set.build(&group, n)?;
        let count = par::count_points(&v, &a, cfg.budgets.tuples as u128)?;
        let k = (!a.is_empty()).then(|| doubling(&a)).transpose()?;
        let mut row = ReportRow::new(exp, "count", n, a.len(), count).with_doubling(k);
        if !a.is_empty() {
            row = row.with_reference(Rational::from(a.len() as i64).pow(vc.dim as i64 - 1)?);
        }
        Ok(vec![row.with_detail(format!("dim={}", vc.dim))])
    })
}

fn parse_poly(text: &str, num_vars: Option<usize>) -> LabResult<MultiPoly> {
    MultiPoly::parse(text, num_vars).map_err(LabError::config)
}

fn elekes_ronyai(cfg: &ExperimentConfig) -> LabResult<Vec<ReportRow>> {
    let exp = name(cfg);
    let group = cfg.group()?;
    let set = cfg.set_spec()?;
    let text = cfg
        .polynomial
        .as_deref()
        .ok_or_else(|| LabError::Config("elekes_ronyai needs `polynomial`".into()))?;
    let p = parse_poly(text, None)?;
    let degenerate = match group {
        GroupDescriptor::Multiplicative => gm_degeneracy(&p).map_err(LabError::config)?,
        GroupDescriptor::Additive => ga_degeneracy(&p).map_err(LabError::config)?.is_some(),
        GroupDescriptor::Elliptic(_) => return Err(LabError::Config("elekes_ronyai runs over Ga or Gm".into())),
    };
    if degenerate {
        return Err(LabError::DegenerateInput(format!("{p} is degenerate for {group:?}")));
    }
    let g = p.num_vars();
    sweep(cfg, &cfg.sweep_values()?, |n| {
        let a = set.build(&group, n)?;
        let image = par::poly_image(&p, &a, cfg.budgets.tuples as u128)?;
        let mut row = ReportRow::new(exp, "image", n, a.len(), image.len() as u64).with_detail(format!("P={p}"));
        if !a.is_empty() {
            let k = doubling(&a)?;
            let reference = Rational::from(a.len() as i64).pow(g as i64)?.checked_div(&k)?;
            row = row.with_doubling(Some(k)).with_reference(reference);
        }
        Ok(vec![row])
    })
}

fn patterns(cfg: &ExperimentConfig) -> LabResult<Vec<ReportRow>> {
    let exp = name(cfg);
    let group = cfg.group()?;
    let set = cfg.set_spec()?;
    sweep(cfg, &cfg.sweep_values()?, |n| {
        let a = set.build(&group, n)?;
        if a.iter().any(|e| e.value().is_none()) {
            return Err(LabError::Config("patterns needs a set of rationals (Ga or Gm)".into()));
        }
        pattern_rows(exp, "", n, &a.values())
    })
}

fn degeneracy(cfg: &ExperimentConfig) -> LabResult<Vec<ReportRow>> {
    let exp = name(cfg);
    let polys: Vec<&String> = cfg.polynomials.iter().chain(cfg.polynomial.as_ref()).collect();
    if polys.is_empty() {
        return Err(LabError::Config("degeneracy needs `polynomials`".into()));
    }
    let group = cfg.group.as_ref().map(|g| g.to_group()).transpose()?;
    let (want_ga, want_gm) = match group {
        None => (true, true),
        Some(GroupDescriptor::Additive) => (true, false),
        Some(GroupDescriptor::Multiplicative) => (false, true),
        Some(GroupDescriptor::Elliptic(_)) => return Err(LabError::Config("no degeneracy criterion for elliptic groups".into())),
    };
    let values: Vec<i64> = (0..polys.len() as i64).collect();
    sweep(cfg, &values, |i| {
        let p = parse_poly(polys[i as usize], None)?;
        let mut rows = Vec::new();
        if want_ga {
            let v = ga_degeneracy(&p).map_err(LabError::config)?;
            let detail = match &v {
                Some(v) => format!("{p}: v=({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
                None => format!("{p}: none"),
            };
            rows.push(ReportRow::new(exp, "Ga", i, 0, u64::from(v.is_some())).with_detail(detail));
        }
        if want_gm {
            let d = gm_degeneracy(&p).map_err(LabError::config)?;
            rows.push(ReportRow::new(exp, "Gm", i, 0, u64::from(d)).with_detail(p.to_string()));
        }
        rows.push(ReportRow::new(exp, "hypersurface_degree", i, 0, u64::from(hypersurface_degree(&p))).with_detail(p.to_string()));
        Ok(rows)
    })
}
