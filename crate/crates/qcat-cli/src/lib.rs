//! The `qcat` command: tables, family enumerations, bijection
//! application, and the verification suite, over the engines in the
//! `qcat` crate.
//!
//! Exit codes: 0 for success (including report-only discrepancies),
//! 1 when an enforced check fails, 2 for usage, parse, or bound errors.

pub mod render;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qcat::bijections::{phi_insert, psi, psi_inverse};
use qcat::choose2;
use qcat::lattice::{
    area, complete_path, gen_paths, path_to_tree, path_to_word, word_inv, word_to_path, BinWord,
    LatticePath,
};
use qcat::perm::{cell_index, coinv, inv, s_prime, PatternTag, Perm};
use qcat::poly::UniPoly;
use qcat::triangles::{
    classical_triangle, cyclotomic_triangle, mirror_triangle, multi_triangle, q_triangle,
    qp_triangle,
};
use qcat::verify::{run_all, run_check, suite_ok, CheckReport, CheckStatus};

use render::{csv_field, latex_multi, latex_uni};

/// Hard ceiling for table rows; polynomial tables stay printable below it.
const MAX_TABLE_N: usize = 40;
/// The multivariate table grows much faster per cell; keep it at desk scale.
const MAX_TABLE_MULTI_N: usize = 12;

#[derive(Parser)]
#[command(
    name = "qcat",
    version,
    about = "q-Catalan triangle tables, enumerations, bijections, and checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print a triangle as csv, json, or a LaTeX array.
    Table {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n_max: usize,
        /// Number of residue classes; required for multi and cyclotomic.
        #[arg(long)]
        mu: Option<u32>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// List the members of one cell family, optionally with statistics.
    Enumerate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Add the statistic columns applicable to the family.
        #[arg(long)]
        with_stats: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Run one verification check, or "all" for the whole suite.
    Verify {
        /// A check id (see --check list) or "all".
        #[arg(long)]
        check: String,
        /// Bound for the single check, or the enumeration bound of "all"
        /// (default 6 for one check, 8 for the suite).
        #[arg(long)]
        n_max: Option<usize>,
        /// Polynomial-scale bound, "all" only (default 40).
        #[arg(long)]
        n_max_poly: Option<usize>,
        /// Number of residue classes for the checks that take one.
        #[arg(long)]
        mu: Option<u32>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Apply one of the bijections to a textual object.
    Bijection {
        #[arg(long, value_enum)]
        map: MapArg,
        /// The object: a permutation (digits, or comma-separated), a path
        /// (E/N letters), or a word (0/1 letters), as the map requires.
        #[arg(long)]
        input: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Classical,
    Q,
    Mirror,
    Qp,
    Multi,
    Cyclotomic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "perm:312")]
    Perm312,
    #[value(name = "perm:321")]
    Perm321,
    #[value(name = "perm:213")]
    Perm213,
    #[value(name = "perm:123")]
    Perm123,
    #[value(name = "perm:231")]
    Perm231,
    #[value(name = "perm:132")]
    Perm132,
    Path,
    Word,
    Tree,
}

impl FamilyArg {
    fn pattern(self) -> Option<PatternTag> {
        match self {
            FamilyArg::Perm312 => Some(PatternTag::P312),
            FamilyArg::Perm321 => Some(PatternTag::P321),
            FamilyArg::Perm213 => Some(PatternTag::P213),
            FamilyArg::Perm123 => Some(PatternTag::P123),
            FamilyArg::Perm231 => Some(PatternTag::P231),
            FamilyArg::Perm132 => Some(PatternTag::P132),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    Phi,
    Psi,
    PsiInverse,
    PathWord,
    WordPath,
    PathTree,
}

pub fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        // Output is buffered whole (it is desk-scale by construction), so
        // a reader that hangs up early is not an error.
        Ok((text, code)) => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
            {
                Ok(()) => code,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => code,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<(String, u8), String> {
    match command {
        Command::Table {
            kind,
            n_max,
            mu,
            format,
        } => cmd_table(kind, n_max, mu, format),
        Command::Enumerate {
            family,
            n,
            k,
            with_stats,
            format,
        } => cmd_enumerate(family, n, k, with_stats, format),
        Command::Verify {
            check,
            n_max,
            n_max_poly,
            mu,
            format,
        } => cmd_verify(&check, n_max, n_max_poly, mu, format),
        Command::Bijection { map, input, n, k } => cmd_bijection(map, &input, n, k),
    }
}

fn kind_name(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Classical => "classical",
        KindArg::Q => "q",
        KindArg::Mirror => "mirror",
        KindArg::Qp => "qp",
        KindArg::Multi => "multi",
        KindArg::Cyclotomic => "cyclotomic",
    }
}

fn table_cells(
    kind: KindArg,
    n_max: usize,
    mu: Option<u32>,
    latex: bool,
) -> Result<Vec<Vec<String>>, String> {
    let need_mu = || mu.ok_or_else(|| format!("--mu is required for --kind {}", kind_name(kind)));
    let rows = match kind {
        KindArg::Classical => classical_triangle(n_max)
            .rows()
            .iter()
            .map(|row| row.iter().map(|c| c.to_string()).collect())
            .collect(),
        KindArg::Q | KindArg::Mirror => {
            let t = if kind == KindArg::Q {
                q_triangle(n_max)
            } else {
                mirror_triangle(n_max)
            };
            t.rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| {
                            if latex {
                                latex_uni(c, "q")
                            } else {
                                c.to_string()
                            }
                        })
                        .collect()
                })
                .collect()
        }
        KindArg::Qp => qp_triangle(n_max)
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| if latex { latex_multi(c) } else { c.to_string() })
                    .collect()
            })
            .collect(),
        KindArg::Multi => {
            let mu = need_mu()?;
            if n_max > MAX_TABLE_MULTI_N {
                return Err(format!(
                    "--n-max {n_max} exceeds the multivariate table bound {MAX_TABLE_MULTI_N}"
                ));
            }
            multi_triangle(n_max, mu)
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| if latex { latex_multi(c) } else { c.to_string() })
                        .collect()
                })
                .collect()
        }
        KindArg::Cyclotomic => {
            let mu = need_mu()?;
            cyclotomic_triangle(n_max, mu)
                .map_err(|e| e.to_string())?
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| {
                            if latex {
                                latex_uni(&UniPoly::from_coeffs(c.rep().to_vec()), "w")
                            } else {
                                c.to_string()
                            }
                        })
                        .collect()
                })
                .collect()
        }
    };
    Ok(rows)
}

fn cmd_table(
    kind: KindArg,
    n_max: usize,
    mu: Option<u32>,
    format: FormatArg,
) -> Result<(String, u8), String> {
    use std::fmt::Write;
    if n_max > MAX_TABLE_N {
        return Err(format!(
            "--n-max {n_max} exceeds the table bound {MAX_TABLE_N}"
        ));
    }
    let rows = table_cells(kind, n_max, mu, format == FormatArg::Latex)?;
    let mut out = String::new();
    match format {
        FormatArg::Csv => {
            for row in &rows {
                let line: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
                writeln!(out, "{}", line.join(",")).unwrap();
            }
        }
        FormatArg::Json => {
            let doc = json!({
                "kind": kind_name(kind),
                "n_max": n_max,
                "mu": mu,
                "rows": rows,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
        }
        FormatArg::Latex => {
            let cols: String = "c".repeat(n_max + 1);
            writeln!(out, "\\begin{{array}}{{c|{cols}}}").unwrap();
            let header: Vec<String> = (0..=n_max).map(|k| k.to_string()).collect();
            writeln!(out, "n\\backslash k & {}\\\\\\hline", header.join(" & ")).unwrap();
            for (n, row) in rows.iter().enumerate() {
                writeln!(out, "{n} & {}\\\\", row.join(" & ")).unwrap();
            }
            writeln!(out, "\\end{{array}}").unwrap();
        }
    }
    Ok((out, 0))
}

/// One enumerated object with its named statistics.
struct EnumRow {
    object: String,
    stats: Vec<(&'static str, usize)>,
}

fn enumerate_rows(family: FamilyArg, n: usize, k: usize) -> Result<Vec<EnumRow>, String> {
    if let Some(tau) = family.pattern() {
        let perms = s_prime(n, k, tau).map_err(|e| e.to_string())?;
        return Ok(perms
            .iter()
            .map(|pi| EnumRow {
                object: pi.to_string(),
                stats: vec![
                    ("inv", inv(pi)),
                    ("coinv", coinv(pi)),
                    ("cell", cell_index(pi, tau).expect("member of the family")),
                ],
            })
            .collect());
    }
    let paths = gen_paths(n, k).map_err(|e| e.to_string())?;
    Ok(match family {
        FamilyArg::Path => paths
            .iter()
            .map(|p| {
                let a = area(p);
                EnumRow {
                    object: p.to_string(),
                    stats: vec![("area", a), ("coarea", choose2(n) - a)],
                }
            })
            .collect(),
        FamilyArg::Word => paths
            .iter()
            .map(|p| {
                let w = path_to_word(p);
                let i = word_inv(&w);
                EnumRow {
                    object: w.to_string(),
                    stats: vec![("inv", i), ("coarea", choose2(n) - i)],
                }
            })
            .collect(),
        FamilyArg::Tree => paths
            .iter()
            .map(|p| {
                let t = path_to_tree(&complete_path(p)).expect("completion is full");
                let s = qcat::lattice::tree_stat(&t);
                EnumRow {
                    object: t.to_string(),
                    stats: vec![("stat", s)],
                }
            })
            .collect(),
        _ => unreachable!("permutation families handled above"),
    })
}

fn cmd_enumerate(
    family: FamilyArg,
    n: usize,
    k: usize,
    with_stats: bool,
    format: FormatArg,
) -> Result<(String, u8), String> {
    use std::fmt::Write;
    let rows = enumerate_rows(family, n, k)?;
    let mut out = String::new();
    match format {
        FormatArg::Csv => {
            for row in &rows {
                let mut fields = vec![csv_field(&row.object)];
                if with_stats {
                    fields.extend(row.stats.iter().map(|(_, v)| v.to_string()));
                }
                writeln!(out, "{}", fields.join(",")).unwrap();
            }
        }
        FormatArg::Json => {
            let docs: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let mut doc = serde_json::Map::new();
                    doc.insert("object".to_string(), json!(row.object));
                    if with_stats {
                        for (name, v) in &row.stats {
                            doc.insert(name.to_string(), json!(v));
                        }
                    }
                    serde_json::Value::Object(doc)
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&docs).unwrap()).unwrap();
        }
        FormatArg::Latex => return Err("latex output applies to table only".to_string()),
    }
    Ok((out, 0))
}

fn reports_csv(reports: &[CheckReport]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for r in reports {
        let status = match r.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::ReportOnly => "report-only",
        };
        for c in &r.cells {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                csv_field(&r.check_id),
                status,
                c.n,
                c.k,
                c.ok,
                csv_field(&c.expected),
                csv_field(&c.actual)
            )
            .unwrap();
        }
    }
    out
}

fn cmd_verify(
    check: &str,
    n_max: Option<usize>,
    n_max_poly: Option<usize>,
    mu: Option<u32>,
    format: FormatArg,
) -> Result<(String, u8), String> {
    if format == FormatArg::Latex {
        return Err("latex output applies to table only".to_string());
    }
    if check == "all" {
        if mu.is_some() {
            return Err("--mu applies to single checks, not to --check all".to_string());
        }
        let reports =
            run_all(n_max.unwrap_or(8), n_max_poly.unwrap_or(40)).map_err(|e| e.to_string())?;
        let out = match format {
            FormatArg::Json => {
                let doc = json!({
                    "suite_ok": suite_ok(&reports),
                    "reports": reports,
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
            }
            _ => reports_csv(&reports),
        };
        Ok((out, if suite_ok(&reports) { 0 } else { 1 }))
    } else {
        if n_max_poly.is_some() {
            return Err("--n-max-poly applies to --check all only".to_string());
        }
        let report = run_check(check, n_max.unwrap_or(6), mu).map_err(|e| e.to_string())?;
        let out = match format {
            FormatArg::Json => format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
            _ => reports_csv(std::slice::from_ref(&report)),
        };
        let code = if report.status == CheckStatus::Fail {
            1
        } else {
            0
        };
        Ok((out, code))
    }
}

fn cmd_bijection(
    map: MapArg,
    input: &str,
    n: Option<usize>,
    k: Option<usize>,
) -> Result<(String, u8), String> {
    fn need(v: Option<usize>, flag: &str) -> Result<usize, String> {
        v.ok_or_else(|| format!("--{flag} is required for this map"))
    }
    let out = match map {
        MapArg::Phi => {
            let pi: Perm = input
                .parse()
                .map_err(|e: qcat::perm::PermError| e.to_string())?;
            phi_insert(&pi, need(n, "n")?, need(k, "k")?)
                .map_err(|e| e.to_string())?
                .to_string()
        }
        MapArg::Psi => {
            let pi: Perm = input
                .parse()
                .map_err(|e: qcat::perm::PermError| e.to_string())?;
            psi(&pi, need(n, "n")?, need(k, "k")?)
                .map_err(|e| e.to_string())?
                .to_string()
        }
        MapArg::PsiInverse => {
            let path: LatticePath = input
                .parse()
                .map_err(|e: qcat::lattice::LatticeError| e.to_string())?;
            psi_inverse(&path, need(n, "n")?, need(k, "k")?)
                .map_err(|e| e.to_string())?
                .to_string()
        }
        MapArg::PathWord => {
            let path: LatticePath = input
                .parse()
                .map_err(|e: qcat::lattice::LatticeError| e.to_string())?;
            path_to_word(&path).to_string()
        }
        MapArg::WordPath => {
            let word: BinWord = input
                .parse()
                .map_err(|e: qcat::lattice::LatticeError| e.to_string())?;
            word_to_path(&word).map_err(|e| e.to_string())?.to_string()
        }
        MapArg::PathTree => {
            let path: LatticePath = input
                .parse()
                .map_err(|e: qcat::lattice::LatticeError| e.to_string())?;
            path_to_tree(&path).map_err(|e| e.to_string())?.to_string()
        }
    };
    Ok((format!("{out}\n"), 0))
}
