use std::ops::RangeInclusive;

use exspectra_core::canon::small_canonical_form;
use exspectra_core::charpoly::{charpoly_forest, charpoly_oracle, DegreeLabeledForest};
use exspectra_core::enumeration::{connected_graphs, free_trees};
use exspectra_core::exmatrix::{eta_lower_bound_fm1, eta_sandwich, extended_adjacency};
use exspectra_core::extremal::{self, EQ_TOL};
use exspectra_core::rational::{self, to_pq};
use exspectra_core::spectra::{eta1_with, extended_energy_with, lambda1_with};
use exspectra_core::{Error, Family, Graph, SpectralOptions, VerificationReport};
use serde_json::{json, Map, Value};

use crate::output::{cell, num, Output};
use crate::{Check, CliError, ComputeArgs, ConjectureArgs, Emit, EnumerateArgs, Kind, Quantity, RankArgs, VerifyArgs};

fn spectral_params(opts: &SpectralOptions) -> Map<String, Value> {
    let mut p = Map::new();
    p.insert("tol".into(), json!(opts.tol));
    p.insert("max_iter".into(), json!(opts.max_iter));
    p
}

fn parse_family(args: &ComputeArgs) -> Result<Family, CliError> {
    let name = args.family.as_deref().unwrap_or_default();
    if name.contains(':') {
        return Ok(name.parse::<Family>()?);
    }
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("family {name} needs --{flag}")))
    };
    let params = match name {
        "K_ab" | "K" | "double_star" => vec![need(args.a, "a")?, need(args.b, "b")?],
        "spider" => args.legs.clone(),
        h if h.starts_with('H') => Vec::new(),
        _ => vec![need(args.n, "n")?],
    };
    Ok(Family::from_parts(name, &params)?)
}

fn quantity_name(q: Quantity) -> &'static str {
    match q {
        Quantity::Eta1 => "eta1",
        Quantity::Lambda1 => "lambda1",
        Quantity::Energy => "energy",
        Quantity::M1 => "m1",
        Quantity::F => "f",
        Quantity::Bounds => "bounds",
        Quantity::Charpoly => "charpoly",
    }
}

fn require_connected(g: &Graph) -> Result<(), CliError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected.into())
    }
}

pub fn compute(args: &ComputeArgs, opts: &SpectralOptions) -> Result<Output, CliError> {
    let mut params = spectral_params(opts);
    let g = match &args.input {
        Some(path) => {
            params.insert("input".into(), json!(path.display().to_string()));
            Graph::parse_edge_list(&std::fs::read_to_string(path)?)?
        }
        None => {
            let fam = parse_family(args)?;
            params.insert("family".into(), json!(fam.to_string()));
            fam.build()?
        }
    };
    params.insert("n".into(), json!(g.order()));
    params.insert("m".into(), json!(g.size()));
    params.insert(
        "what".into(),
        json!(args.what.iter().map(|&q| quantity_name(q)).collect::<Vec<_>>()),
    );

    let mut result = Map::new();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut passed = true;
    for &q in &args.what {
        let name = quantity_name(q);
        match q {
            Quantity::Eta1 | Quantity::Lambda1 | Quantity::Energy => {
                require_connected(&g)?;
                let v = match q {
                    Quantity::Eta1 => eta1_with(&g, opts)?.value,
                    Quantity::Lambda1 => lambda1_with(&g, opts)?.value,
                    _ => extended_energy_with(&g, opts.tol)?,
                };
                result.insert(name.into(), num(v));
                rows.push(vec![name.into(), cell(v)]);
            }
            Quantity::M1 | Quantity::F => {
                let v = if q == Quantity::M1 { g.first_zagreb() } else { g.forgotten() };
                result.insert(name.into(), json!(v));
                rows.push(vec![name.into(), v.to_string()]);
            }
            Quantity::Bounds => {
                require_connected(&g)?;
                let eta = eta1_with(&g, opts)?.value;
                let lambda = lambda1_with(&g, opts)?.value;
                let (lower, upper) = eta_sandwich(&g, lambda)?;
                let fm1 = eta_lower_bound_fm1(&g)?;
                let fm1_value = rational::to_f64(&fm1);
                let holds = lower <= eta + EQ_TOL && eta <= upper + EQ_TOL && fm1_value <= eta + EQ_TOL;
                passed &= holds;
                let class = g.regularity_class()?;
                result.insert(
                    name.into(),
                    json!({
                        "eta1": num(eta),
                        "lambda1": num(lambda),
                        "upper": num(upper),
                        "f_over_m1": to_pq(&fm1),
                        "f_over_m1_value": num(fm1_value),
                        "regularity": class,
                        "holds": holds,
                    }),
                );
                for (k, v) in [
                    ("eta1", cell(eta)),
                    ("lambda1", cell(lambda)),
                    ("upper", cell(upper)),
                    ("f_over_m1", to_pq(&fm1)),
                    ("f_over_m1_value", cell(fm1_value)),
                    ("regularity", serde_json::to_value(class)?.as_str().unwrap_or_default().to_string()),
                    ("holds", holds.to_string()),
                ] {
                    rows.push(vec![format!("bounds.{k}"), v]);
                }
            }
            Quantity::Charpoly => {
                let poly = if g.is_tree() {
                    charpoly_forest(&DegreeLabeledForest::from_tree(&g)?)
                } else {
                    charpoly_oracle(&extended_adjacency(&g)?)
                };
                let coeffs = poly.to_pq_strings();
                for (k, c) in coeffs.iter().enumerate() {
                    rows.push(vec![format!("charpoly.x^{k}"), c.clone()]);
                }
                result.insert(name.into(), json!(coeffs));
            }
        }
    }
    let mut out = Output::new("compute", params).table(&["quantity", "value"], rows);
    out.result = Value::Object(result);
    out.passed = passed;
    Ok(out)
}

pub fn enumerate(args: &EnumerateArgs) -> Result<Output, CliError> {
    let graphs: Vec<(String, Graph)> = match args.kind {
        Kind::Trees => free_trees(args.n)?.collect(),
        Kind::Connected => connected_graphs(args.n, true)?
            .map(|g| {
                let (n, mask) = small_canonical_form(&g).expect("order at most 7");
                (format!("{n}:{mask:x}"), g)
            })
            .collect(),
    };
    let mut params = Map::new();
    params.insert("n".into(), json!(args.n));
    params.insert("emit".into(), json!(format!("{:?}", args.emit).to_lowercase()));
    params.insert("kind".into(), json!(format!("{:?}", args.kind).to_lowercase()));
    let count = graphs.len();
    let mut out = Output::new("enumerate", params);
    match args.emit {
        Emit::Count => {
            out.result = json!({ "count": count });
            out.text = Some(format!("{count}\n"));
            out = out.table(&["count"], vec![vec![count.to_string()]]);
        }
        Emit::Codes => {
            let codes: Vec<&String> = graphs.iter().map(|(c, _)| c).collect();
            out.result = json!({ "count": count, "codes": codes });
            out.text = Some(codes.iter().map(|c| format!("{c}\n")).collect());
            out = out.table(&["code"], codes.iter().map(|c| vec![c.to_string()]).collect());
        }
        Emit::Edges => {
            let items: Vec<Value> = graphs
                .iter()
                .map(|(c, g)| json!({ "code": c, "n": g.order(), "edges": g.edges() }))
                .collect();
            out.result = json!({ "count": count, "graphs": items });
            out.text = Some(
                graphs
                    .iter()
                    .map(|(_, g)| g.to_edge_list_text())
                    .collect::<Vec<_>>()
                    .join("\n"),
            );
            let rows = graphs
                .iter()
                .enumerate()
                .flat_map(|(i, (_, g))| {
                    g.edges()
                        .iter()
                        .map(move |(u, v)| vec![i.to_string(), u.to_string(), v.to_string()])
                })
                .collect();
            out = out.table(&["graph", "u", "v"], rows);
        }
    }
    Ok(out)
}

pub fn rank(args: &RankArgs, opts: &SpectralOptions) -> Result<Output, CliError> {
    let ranking = extremal::rank_trees(args.n, args.top, args.bottom, opts)?;
    let mut params = spectral_params(opts);
    params.insert("n".into(), json!(args.n));
    params.insert("top".into(), json!(args.top));
    params.insert("bottom".into(), json!(args.bottom));
    let slices = [("top", &ranking.top), ("bottom", &ranking.bottom)];
    let rows = slices
        .iter()
        .flat_map(|(slice, entries)| {
            entries.iter().enumerate().map(move |(i, e)| {
                vec![
                    slice.to_string(),
                    (i + 1).to_string(),
                    e.code.clone(),
                    cell(e.eta1),
                    cell(e.lambda1),
                    e.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
                ]
            })
        })
        .collect();
    let mut out = Output::new("rank", params).table(&["slice", "rank", "code", "eta1", "lambda1", "degrees"], rows);
    out.result = serde_json::to_value(&ranking)?;
    Ok(out)
}

pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("cannot read `{text}` as `a..b` or `n`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let n = num(text)?;
            Ok(n..=n)
        }
    }
}

fn default_range(check: Check) -> RangeInclusive<usize> {
    match check {
        Check::Theorem12 => 5..=14,
        Check::Theorem13 => 12..=14,
        Check::Theorem41 | Check::Conjecture | Check::Bounds => 5..=7,
        Check::Claims => 12..=24,
        Check::Paths => 5..=30,
        Check::Appendix => 12..=100,
        Check::Star => 2..=50,
        Check::CompleteBipartite => 2..=10,
    }
}

fn report_output(command: &'static str, mut params: Map<String, Value>, report: VerificationReport) -> Output {
    params.insert("check".into(), json!(report.check));
    let rows = report.csv_rows().into_iter().map(|r| r.to_vec()).collect();
    let mut out = Output::new(command, params).table(&VerificationReport::CSV_HEADER, rows);
    out.passed = report.passed;
    out.result = report.to_json();
    out
}

pub fn verify(args: &VerifyArgs, opts: &SpectralOptions) -> Result<Output, CliError> {
    let range = match &args.n {
        Some(text) => parse_range(text)?,
        None => default_range(args.check),
    };
    let mut params = spectral_params(opts);
    params.insert("n_min".into(), json!(range.start()));
    params.insert("n_max".into(), json!(range.end()));
    let report = match args.check {
        Check::Theorem12 => extremal::verify_theorem_1_2(range, opts)?,
        Check::Theorem13 => extremal::verify_theorem_1_3(range, opts)?,
        Check::Theorem41 => extremal::verify_theorem_4_1(range, opts)?,
        Check::Conjecture => extremal::check_conjecture(range, opts)?,
        Check::Claims => extremal::verify_claims_exact(range, opts)?,
        Check::Bounds => extremal::verify_bounds(range, opts)?,
        Check::Paths => extremal::verify_path_facts(range, opts)?,
        Check::Appendix => extremal::verify_appendix(range)?,
        Check::Star => extremal::verify_star_closed_form(range, opts)?,
        Check::CompleteBipartite => extremal::verify_complete_bipartite(*range.end(), opts)?,
    };
    Ok(report_output("verify", params, report))
}

pub fn conjecture(args: &ConjectureArgs, opts: &SpectralOptions) -> Result<Output, CliError> {
    let report = extremal::check_conjecture(5..=args.max_n, opts)?;
    let mut params = spectral_params(opts);
    params.insert("max_n".into(), json!(args.max_n));
    Ok(report_output("conjecture", params, report))
}
