use serde::Serialize;
use serde_json::{json, Value};
use twistcoh::frolicher::{degeneration_page, e1_partial_exactness, exgen_check, pages_from};
use twistcoh::hopf::vanishing_scan;
use twistcoh::jets::{
    linear_eigenvalues, monoid_member, resolvent_residual, resolvent_solve, spectrum, JetAutomorphism, MultiIndex,
    TruncatedSeries,
};
use twistcoh::twisted::{
    bott_chern_from, ddc_lemma_check_from, dolbeault, exceptional_spectrum, generic_dolbeault, generic_morse_novikov,
    morse_novikov, Selector, TwistedOperators,
};
use twistcoh::{Error, Matrix, Model, Scalar, Weight};

use crate::config::{parse_scalars, RunConfig};
use crate::error::CliError;
use crate::par_map;

/// What a command produces before it is wrapped into a report.
pub struct Output {
    pub summary: Option<Value>,
    pub results: Vec<Value>,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn bidegrees(m: usize, pq: Option<(usize, usize)>) -> Result<Vec<(usize, usize)>, CliError> {
    match pq {
        Some((p, q)) if p > m || q > m => Err(CliError::Validation(format!("bidegree ({p},{q}) outside 0..={m}"))),
        Some(pq) => Ok(vec![pq]),
        None => Ok((0..=m).flat_map(|p| (0..=m).map(move |q| (p, q))).collect()),
    }
}

pub fn mn(cfg: &RunConfig, model: &Model) -> Result<Output, CliError> {
    let reports = par_map(&cfg.alpha, |a| morse_novikov(model, &Weight::new(a.clone())))?;
    let mut out = Output { summary: None, results: vec![], csv_header: vec!["alpha", "k", "dim"], csv_rows: vec![] };
    for (a, r) in cfg.alpha.iter().zip(reports) {
        let dims = r.dims();
        let euler: i64 = dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        for (k, d) in dims.iter().enumerate() {
            out.csv_rows.push(vec![a.to_string(), k.to_string(), d.to_string()]);
        }
        out.results.push(json!({ "alpha": a, "dims": dims, "euler": euler }));
    }
    Ok(out)
}

pub fn dolbeault_cmd(cfg: &RunConfig, model: &Model) -> Result<Output, CliError> {
    let reports = par_map(&cfg.alpha, |a| dolbeault(model, &Weight::new(a.clone())))?;
    let mut out = Output { summary: None, results: vec![], csv_header: vec!["alpha", "p", "q", "dim"], csv_rows: vec![] };
    for (a, r) in cfg.alpha.iter().zip(reports) {
        let table = r.table();
        for (p, row) in table.iter().enumerate() {
            for (q, d) in row.iter().enumerate() {
                out.csv_rows.push(vec![a.to_string(), p.to_string(), q.to_string(), d.to_string()]);
            }
        }
        out.results.push(json!({ "alpha": a, "h": table }));
    }
    Ok(out)
}

pub fn bc(cfg: &RunConfig, model: &Model) -> Result<Output, CliError> {
    let m = model.dim / 2;
    let bideg = bidegrees(m, cfg.pq)?;
    let rows = par_map(&cfg.alpha, |a| {
        let ops = TwistedOperators::new(model, &Weight::new(a.clone()))?;
        bideg
            .iter()
            .map(|&(p, q)| Ok((p, q, bott_chern_from(&ops, p, q)?.dim, ddc_lemma_check_from(&ops, p, q)?)))
            .collect::<twistcoh::Result<Vec<_>>>()
    })?;
    let mut out = Output {
        summary: None,
        results: vec![],
        csv_header: vec!["alpha", "p", "q", "bott_chern", "ddc_holds"],
        csv_rows: vec![],
    };
    for (a, entries) in cfg.alpha.iter().zip(rows) {
        let mut list = Vec::new();
        for (p, q, dim, ddc) in entries {
            out.csv_rows.push(vec![a.to_string(), p.to_string(), q.to_string(), dim.to_string(), ddc.holds.to_string()]);
            list.push(json!({
                "p": p, "q": q, "bott_chern": dim,
                "ddc": { "holds": ddc.holds, "lhs_dim": ddc.lhs_dim, "rhs_dim": ddc.rhs_dim },
            }));
        }
        out.results.push(json!({ "alpha": a, "entries": list }));
    }
    Ok(out)
}

pub fn frolicher(cfg: &RunConfig, model: &Model) -> Result<Output, CliError> {
    let m = model.dim / 2;
    let bideg = bidegrees(m, cfg.pq)?;
    let rows = par_map(&cfg.alpha, |a| {
        let w = Weight::new(a.clone());
        let ops = TwistedOperators::new(model, &w)?;
        let pages = pages_from(&ops, m + 1)?;
        let degen = degeneration_page(model, &w)?;
        let checks = bideg
            .iter()
            .map(|&(p, q)| Ok((p, q, e1_partial_exactness(model, &w, p, q)?, exgen_check(model, &w, p, q)?)))
            .collect::<twistcoh::Result<Vec<_>>>()?;
        Ok((pages, degen, checks))
    })?;
    let mut out = Output {
        summary: None,
        results: vec![],
        csv_header: vec!["alpha", "p", "q", "e1", "e_inf", "degeneration_page", "e1_partial_exact", "exgen_exact"],
        csv_rows: vec![],
    };
    for (a, (pages, degen, checks)) in cfg.alpha.iter().zip(rows) {
        let first = &pages[0].dims;
        let last = &pages[pages.len() - 1].dims;
        let mut list = Vec::new();
        for (p, q, pe, ex) in checks {
            out.csv_rows.push(vec![
                a.to_string(),
                p.to_string(),
                q.to_string(),
                first[p][q].to_string(),
                last[p][q].to_string(),
                degen.page.to_string(),
                pe.holds.to_string(),
                ex.exact.to_string(),
            ]);
            list.push(json!({ "p": p, "q": q, "e1_partial_exactness": pe, "exgen": ex }));
        }
        let page_dims: Vec<Value> = pages.iter().map(|pg| json!({ "r": pg.r, "dims": pg.dims })).collect();
        out.results.push(json!({
            "alpha": a,
            "pages": page_dims,
            "degeneration_page": degen.page,
            "abutment": degen.abutment,
            "bidegrees": list,
        }));
    }
    Ok(out)
}

fn selector_name(s: Selector) -> String {
    match s {
        Selector::Degree(k) => format!("degree {k}"),
        Selector::Bidegree(p, q) => format!("bidegree {p},{q}"),
        Selector::AllDegrees => "all degrees".into(),
        Selector::AllBidegrees => "all bidegrees".into(),
        Selector::All => "all".into(),
    }
}

pub fn spectrum_cmd(cfg: &RunConfig, model: &Model) -> Result<Output, CliError> {
    let n = model.dim;
    let m = n / 2;
    let selectors: Vec<Selector> = match (cfg.degree, cfg.pq) {
        (Some(k), None) => vec![Selector::Degree(k)],
        (None, Some((p, q))) => vec![Selector::Bidegree(p, q)],
        (Some(_), Some(_)) => return Err(CliError::Parse("give at most one of --degree and --pq".into())),
        (None, None) => {
            let mut v = vec![Selector::All, Selector::AllDegrees];
            v.extend((0..=n).map(Selector::Degree));
            v.push(Selector::AllBidegrees);
            v.extend((0..=m).flat_map(|p| (0..=m).map(move |q| Selector::Bidegree(p, q))));
            v
        }
    };
    let sets = par_map(&selectors, |&s| exceptional_spectrum(model, s))?;
    let mut out = Output {
        summary: Some(json!({
            "generic_morse_novikov": generic_morse_novikov(model),
            "generic_dolbeault": generic_dolbeault(model)?,
        })),
        results: vec![],
        csv_header: vec!["selector", "kind", "value"],
        csv_rows: vec![],
    };
    for (s, set) in selectors.iter().zip(sets) {
        let name = selector_name(*s);
        for r in &set.rational_roots {
            out.csv_rows.push(vec![name.clone(), "root".into(), r.to_string()]);
        }
        for f in &set.residual_factors {
            out.csv_rows.push(vec![name.clone(), "factor".into(), f.to_string()]);
        }
        // which grid points are known to be exceptional
        let hits: Vec<&Scalar> = cfg.alpha.iter().filter(|a| set.rational_roots.contains(a)).collect();
        out.results.push(json!({
            "selector": name,
            "rational_roots": set.rational_roots,
            "residual_factors": set.residual_factors,
            "grid_hits": hits,
        }));
    }
    Ok(out)
}

pub fn hopf(cfg: &RunConfig) -> Result<Output, CliError> {
    let rows = par_map(&cfg.alpha, |a| {
        vanishing_scan(&cfg.beta, std::slice::from_ref(a), cfg.monoid_bound).map(|mut v| v.remove(0))
    })?;
    let mut out = Output {
        summary: None,
        results: vec![],
        csv_header: vec!["alpha", "p", "q", "dim", "in_monoid", "in_inverse_monoid"],
        csv_rows: vec![],
    };
    for row in rows {
        for (p, r) in row.dims.iter().enumerate() {
            for (q, d) in r.iter().enumerate() {
                out.csv_rows.push(vec![
                    row.alpha.to_string(),
                    p.to_string(),
                    q.to_string(),
                    d.to_string(),
                    row.in_monoid.member.to_string(),
                    row.in_inverse_monoid.member.to_string(),
                ]);
            }
        }
        out.results.push(to_value(&row));
    }
    Ok(out)
}

/// `e1,...,en:c` terms separated by `;`.
pub fn parse_series(s: &str, n: usize, cutoff: u32) -> Result<TruncatedSeries, CliError> {
    let mut terms: Vec<(MultiIndex, Scalar)> = Vec::new();
    for t in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (idx, c) = t.split_once(':').ok_or_else(|| CliError::Parse(format!("series term {t:?} is not e1,...,en:c")))?;
        let idx: MultiIndex = idx
            .split(',')
            .map(|e| e.trim().parse::<u32>().map_err(|_| CliError::Parse(format!("bad exponent in {t:?}"))))
            .collect::<Result<_, _>>()?;
        let c = c.trim().parse::<Scalar>().map_err(|_| CliError::Parse(format!("bad coefficient in {t:?}")))?;
        terms.push((idx, c));
    }
    TruncatedSeries::from_terms(n, cutoff, terms).map_err(|e| CliError::Parse(e.to_string()))
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_matrix(s: &str) -> Result<Matrix, CliError> {
    let rows: Vec<Vec<Scalar>> = s.split(';').map(parse_scalars).collect::<Result<_, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse(format!("linear part {s:?} is not square")));
    }
    Ok(Matrix::from_rows(rows, n))
}

pub fn automorphism(cfg: &RunConfig) -> Result<JetAutomorphism, CliError> {
    match &cfg.linear {
        Some(l) => JetAutomorphism::linear(&parse_matrix(l)?, cfg.jet_degree),
        None => JetAutomorphism::diagonal(&cfg.diag, cfg.jet_degree),
    }
    .map_err(CliError::from)
}

pub fn jets(cfg: &RunConfig) -> Result<Output, CliError> {
    let t = automorphism(cfg)?;
    let n = t.vars();
    let d = cfg.jet_degree;
    let y = match &cfg.y {
        Some(s) => parse_series(s, n, d)?,
        None => TruncatedSeries::monomial(n, d, vec![1; n], Scalar::one()),
    };
    let eig = linear_eigenvalues(&t)?;
    let monoid = spectrum(&t, cfg.monoid_bound)?;
    let solves = par_map(&cfg.alpha, |l| match resolvent_solve(&t, l, &y, d) {
        Ok(x) => {
            let residual = resolvent_residual(&t, l, &x, &y)?;
            Ok(json!({ "status": "solved", "residual_zero": residual.is_zero(), "solution": x }))
        }
        Err(Error::Singular { degree, witness }) => Ok(json!({ "status": "singular", "degree": degree, "witness": witness })),
        Err(e) => Err(e),
    })?;
    let mut out = Output {
        summary: Some(json!({ "y": y, "eigenvalues": eig, "monoid": monoid })),
        results: vec![],
        csv_header: vec!["lambda", "member", "complete", "status", "singular_degree"],
        csv_rows: vec![],
    };
    for (l, solve) in cfg.alpha.iter().zip(solves) {
        let mem = monoid_member(l, &monoid);
        let degree = solve.get("degree").map(|v| v.to_string()).unwrap_or_default();
        out.csv_rows.push(vec![
            l.to_string(),
            mem.member.to_string(),
            mem.complete.to_string(),
            solve["status"].as_str().unwrap_or_default().to_string(),
            degree,
        ]);
        out.results.push(json!({ "lambda": l, "membership": mem, "resolvent": solve }));
    }
    Ok(out)
}
