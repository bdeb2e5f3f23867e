//! One function per subcommand, each producing an [`Artifact`].

use std::fs;
use std::path::Path;

use normord::bivar::BivarSeries;
use normord::boson::stirling_matrix;
use normord::coeff::{format_scalar, parse_scalar, Scalar};
use normord::flows::{characteristic_correspondence, conjugacy_exp, formal_flow, operator_exp};
use normord::json::{self, BivarJson, MatrixJson, PairJson, StirlingJson};
use normord::parse::{parse_operator, parse_polynomial, parse_word, Expression};
use normord::riordan::{is_sheffer, is_sheffer_rows, recover_pair, riordan_matrix, RiordanPair, ShefferReport};
use normord::verify;
use normord::{Convention, Series, StirlingMatrix, TriMatrix};
use serde::Serialize;

use crate::render::{aligned, cells, indexed_table, Artifact};
use crate::{Failure, PairArgs};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// A polynomial in `x` (read as a function) or comma-separated coefficients
/// `a_n` of `sum a_n x^n / d_n`; padded with zeros or truncated to `order`.
fn series_arg(text: &str, conv: Convention, order: usize) -> Result<Series, Failure> {
    if text.contains('x') {
        let p = parse_polynomial(text)?;
        let plain = (0..=order).map(|k| p.coeff(k)).collect();
        return Ok(Series::from_plain(conv, plain));
    }
    let mut coeffs = text
        .split(',')
        .map(parse_scalar)
        .collect::<normord::Result<Vec<Scalar>>>()?;
    coeffs.resize(order + 1, Scalar::from_integer(0.into()));
    Ok(Series::from_coeffs(conv, coeffs))
}

fn ogf_poly(text: &str, order: usize) -> Result<Series, Failure> {
    series_arg(text, Convention::Ogf, order)
}

pub fn normal_order(text: &str) -> Result<Artifact, Failure> {
    #[derive(Serialize)]
    struct Term {
        creators: usize,
        annihilators: usize,
        coeff: String,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        input: &'a str,
        terms: Vec<Term>,
    }
    let nf = Expression::parse(text)?.to_normal_form();
    let terms: Vec<Term> = nf
        .terms()
        .iter()
        .rev()
        .map(|(&(i, j), c)| Term { creators: i, annihilators: j, coeff: format_scalar(c) })
        .collect();
    let mut rows = vec![vec!["creators".to_string(), "annihilators".into(), "coeff".into()]];
    rows.extend(terms.iter().map(|t| vec![t.creators.to_string(), t.annihilators.to_string(), t.coeff.clone()]));
    Ok(Artifact {
        ok: true,
        json: json::to_string(&Out { input: text, terms }),
        csv: Some(rows),
        pretty: format!("N({text}) = {nf}"),
    })
}

fn stirling_rows(s: &StirlingMatrix) -> (usize, Vec<Vec<String>>) {
    let j = StirlingJson::from_stirling(s);
    let width = j.rows.iter().map(Vec::len).max().unwrap_or(0);
    (width, j.rows)
}

pub fn stirling(word: &str, n: usize) -> Result<Artifact, Failure> {
    let s = stirling_matrix(&parse_word(word)?, n)?;
    let (width, rows) = stirling_rows(&s);
    let table = indexed_table("n", width, &rows);
    Ok(Artifact {
        ok: true,
        json: json::to_string(&StirlingJson::from_stirling(&s)),
        pretty: format!("S_w(n, k) for w = {}, excess {}\n{}", s.label(), s.excess(), aligned(&table)),
        csv: Some(table),
    })
}

fn matrix_artifact(m: &TriMatrix, title: String) -> Artifact {
    let rows: Vec<Vec<String>> = (0..m.size()).map(|i| cells(m.row(i))).collect();
    let table = indexed_table("n", m.size(), &rows);
    Artifact {
        ok: true,
        json: json::to_string(&MatrixJson::from_matrix(m)),
        pretty: format!("{title} (class {})\n{}", m.class(), aligned(&table)),
        csv: Some(table),
    }
}

fn pair_table(p: &RiordanPair) -> Vec<Vec<String>> {
    let (g, phi) = (p.g().coeffs(), p.phi().coeffs());
    let mut rows = vec![vec!["n".to_string(), "g".into(), "phi".into()]];
    rows.extend((0..=p.order()).map(|n| vec![n.to_string(), format_scalar(&g[n]), format_scalar(&phi[n])]));
    rows
}

fn pair_pretty(p: &RiordanPair) -> String {
    format!("g   = {}\nphi = {}", p.g(), p.phi())
}

pub fn riordan_build(args: &PairArgs, n: usize) -> Result<Artifact, Failure> {
    let pair = match (&args.pair, &args.phi) {
        (Some(path), _) => json::from_str::<PairJson>(&read(path)?)?.to_pair()?,
        (None, Some(phi)) => RiordanPair::new(
            series_arg(&args.g, args.convention, n)?,
            series_arg(phi, args.convention, n)?,
        )?,
        (None, None) => return Err(Failure::Input("give --pair or --phi".into())),
    };
    let m = riordan_matrix(&pair, n)?;
    Ok(matrix_artifact(&m, format!("M(g, phi) in {}", pair.convention())))
}

pub fn riordan_recover(path: &Path, conv: Convention) -> Result<Artifact, Failure> {
    let m = json::from_str::<MatrixJson>(&read(path)?)?.to_matrix()?;
    let pair = recover_pair(&m, conv)?;
    Ok(Artifact {
        ok: true,
        json: json::to_string(&PairJson::from_pair(&pair)),
        csv: Some(pair_table(&pair)),
        pretty: pair_pretty(&pair),
    })
}

fn sheffer_artifact(report: &ShefferReport) -> Artifact {
    #[derive(Serialize)]
    struct Violation {
        column: usize,
        row: usize,
    }
    #[derive(Serialize)]
    struct Out {
        holds: bool,
        violation: Option<Violation>,
        pair: PairJson,
    }
    let out = Out {
        holds: report.holds(),
        violation: report.violation.map(|(column, row)| Violation { column, row }),
        pair: PairJson::from_pair(&report.pair),
    };
    let verdict = match report.violation {
        None => "sheffer: holds".to_string(),
        Some((k, n)) => format!("sheffer: fails, column {k} differs from g phi^{k}/d_{k} at row {n}"),
    };
    Artifact {
        ok: report.holds(),
        json: json::to_string(&out),
        csv: None,
        pretty: format!("{verdict}\ncandidate pair:\n{}", pair_pretty(&report.pair)),
    }
}

pub fn sheffer_check(matrix: Option<&Path>, word: Option<&str>, n: usize, conv: Convention) -> Result<Artifact, Failure> {
    let report = match (matrix, word) {
        (Some(path), _) => is_sheffer(&json::from_str::<MatrixJson>(&read(path)?)?.to_matrix()?, conv)?,
        (None, Some(w)) => is_sheffer_rows(&stirling_matrix(&parse_word(w)?, n)?.matrix().to_rows(), conv)?,
        (None, None) => return Err(Failure::Input("give --matrix or --word".into())),
    };
    Ok(sheffer_artifact(&report))
}

fn grid_artifact(b: &BivarSeries, title: String) -> Artifact {
    let rows: Vec<Vec<String>> = (0..=b.nx()).map(|i| (0..=b.ny()).map(|j| format_scalar(&b.coeff(i, j))).collect()).collect();
    let table = indexed_table("i", b.ny() + 1, &rows);
    Artifact {
        ok: true,
        json: json::to_string(&BivarJson::from_bivar(b)),
        pretty: format!("{title}\nrow i, column j: coefficient of x^i lambda^j\n{}", aligned(&table)),
        csv: Some(table),
    }
}

pub fn flow(field: &str, nx: usize, nl: usize) -> Result<Artifact, Failure> {
    let v = ogf_poly(field, nx + nl)?;
    let flow = formal_flow(&v, nx, nl)?;
    Ok(grid_artifact(flow.s(), format!("s_lambda(x) for ({field}) d/dx")))
}

pub fn group_action(op: Option<&str>, u: Option<(&str, &str)>, f: &str, nx: usize, nl: usize) -> Result<Artifact, Failure> {
    let order = nx + nl + 1;
    let fs = ogf_poly(f, order)?;
    let (grid, title) = match (op, u) {
        (Some(text), _) => {
            let expr = Expression::parse(text)?;
            let single = expr.to_operator().ok().filter(|o| o.single_word().is_some() && o.excess() >= 0);
            let grid = match single {
                Some(o) => normord::flows::group_action(&o, &fs, nx, nl)?,
                None => operator_exp(&expr.single_annihilator_terms()?, &fs, nx, nl)?,
            };
            (grid, format!("exp(lambda ({text}))[{f}]"))
        }
        (None, Some((u1, u2))) => {
            let grid = conjugacy_exp(&ogf_poly(u1, order)?, &ogf_poly(u2, order)?, &fs, nx, nl)?;
            (grid, format!("exp(lambda ({u1}) d/dx ({u2}))[{f}]"))
        }
        (None, None) => return Err(Failure::Input("give --op or --u1 and --u2".into())),
    };
    Ok(grid_artifact(&grid, title))
}

pub fn correspond(op: &str, n: usize) -> Result<Artifact, Failure> {
    #[derive(Serialize)]
    struct Out {
        operator: String,
        excess: i64,
        n_max: usize,
        stirling: StirlingJson,
        pair: Option<PairJson>,
        sheffer_failure: Option<String>,
        checked: usize,
        mismatches: Vec<[usize; 3]>,
        passed: bool,
    }
    let operator = parse_operator(op)?;
    let c = characteristic_correspondence(&operator, n)?;
    let out = Out {
        operator: operator.to_string(),
        excess: operator.excess(),
        n_max: n,
        stirling: StirlingJson::from_stirling(&c.stirling),
        pair: c.pair.as_ref().map(PairJson::from_pair),
        sheffer_failure: c.sheffer_failure.clone(),
        checked: c.checked,
        mismatches: c.mismatches.iter().map(|&(m, i, j)| [m, i, j]).collect(),
        passed: c.passed(),
    };
    let mut pretty = format!("operator {} (excess {})\n", operator, operator.excess());
    if let Some(p) = &c.pair {
        pretty.push_str(&pair_pretty(p));
        pretty.push('\n');
    }
    pretty.push_str(&match (&c.sheffer_failure, c.mismatches.first()) {
        (Some(why), _) => format!("FAIL: {why}"),
        (None, Some((m, i, j))) => format!("FAIL: U_lambda[x^{m}] differs at x^{i} lambda^{j} ({} mismatches)", c.mismatches.len()),
        (None, None) => format!("PASS: {} coefficients of U_lambda[x^m], m <= {n}, match exp(lambda Omega)", c.checked),
    });
    Ok(Artifact { ok: c.passed(), json: json::to_string(&out), csv: None, pretty })
}

pub fn verify(seed: u64, only: &[u8]) -> Artifact {
    #[derive(Serialize)]
    struct Line {
        id: u8,
        name: &'static str,
        passed: bool,
        detail: String,
    }
    #[derive(Serialize)]
    struct Out {
        seed: u64,
        criteria: Vec<Line>,
        passed: bool,
    }
    let ids: Vec<u8> = if only.is_empty() { verify::CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    let results: Vec<_> = ids.iter().map(|&id| verify::run(id, seed)).collect();
    let passed = results.iter().all(|r| r.passed);
    let mut pretty: String = results.iter().map(|r| format!("{r}\n")).collect();
    pretty.push_str(&format!(
        "{} of {} criteria passed",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    ));
    let mut rows = vec![vec!["id".to_string(), "name".into(), "passed".into(), "detail".into()]];
    rows.extend(results.iter().map(|r| vec![r.id.to_string(), r.name.to_string(), r.passed.to_string(), r.detail.clone()]));
    let out = Out {
        seed,
        criteria: results.into_iter().map(|r| Line { id: r.id, name: r.name, passed: r.passed, detail: r.detail }).collect(),
        passed,
    };
    Artifact { ok: passed, json: json::to_string(&out), csv: Some(rows), pretty }
}
