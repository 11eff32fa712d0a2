use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hwgroup::characters::character_table;
use hwgroup::fourier::{eigensystem_y, fourier_fd, verify_fourier_relations, DenseUnitary, FourierReport};
use hwgroup::fusion::{fuse_row, fusion_table, FusionRow};
use hwgroup::group::GroupParams;
use hwgroup::rep::{enumerate_irreps, irrep_matrix, IrrepLabel};
use hwgroup::verify::{verify, VerifyLevel};
use hwgroup::{GroupElement, HwError};

#[derive(Parser, Debug)]
#[command(name = "hw", version, about = "Exact representation theory of the Heisenberg-Weyl group HW_{2^s}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List canonical irrep labels
    Irreps(Common),
    /// List conjugacy classes
    Classes(Common),
    /// Emit the character table
    Chartable(Common),
    /// Evaluate an irrep on a group element
    Matrix {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "p,q,r")]
        label: String,
        #[arg(long, value_name = "m,n,l")]
        element: String,
    },
    /// Decompose a tensor product, or emit the whole fusion table
    Fuse {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "p,q,r", requires = "right")]
        left: Option<String>,
        #[arg(long, value_name = "p,q,r", requires = "left")]
        right: Option<String>,
    },
    /// Fourier transform F_D and its residual report
    Fourier {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "p,q,r")]
        label: Option<String>,
    },
    /// Run the verification suite
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Level::Full)]
        verify_level: Level,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    s: u32,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Level {
    Full,
    Sampled,
}

/// What went wrong, mapped onto the process exit code.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<HwError> for Failure {
    fn from(e: HwError) -> Self {
        match e {
            HwError::Inconsistency(_) | HwError::Overflow => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out_path = match &cli.command {
        Command::Irreps(c) | Command::Classes(c) | Command::Chartable(c) => c.out.clone(),
        Command::Matrix { common, .. }
        | Command::Fuse { common, .. }
        | Command::Fourier { common, .. }
        | Command::Verify { common, .. } => common.out.clone(),
    };
    let result = match execute(cli.command) {
        Ok((text, ok)) => emit(&text, out_path.as_deref()).map(|_| ok),
        Err(e) => Err(e),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("hw: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("hw: internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(text: &str, path: Option<&std::path::Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Internal(e.to_string()))
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> Result<String, Failure>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Failure::Internal(e.to_string());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Internal(e.to_string()))
}

fn label(s: u32, text: &str) -> Result<IrrepLabel, Failure> {
    Ok(IrrepLabel::parse(s, text)?)
}

fn execute(command: Command) -> Outcome {
    match command {
        Command::Irreps(c) => irreps(&c),
        Command::Classes(c) => classes(&c),
        Command::Chartable(c) => chartable(&c),
        Command::Matrix { common, label: l, element } => matrix(&common, &l, &element),
        Command::Fuse { common, left, right } => match (left, right) {
            (Some(a), Some(b)) => fuse(&common, &a, &b),
            _ => fuse_all(&common),
        },
        Command::Fourier { common, label: l } => fourier(&common, l.as_deref()),
        Command::Verify { common, verify_level, seed } => run_verify(&common, verify_level, seed),
    }
}

fn irreps(c: &Common) -> Outcome {
    let labels = enumerate_irreps(c.s)?;
    let text = match c.format {
        Format::Json => json(&labels)?,
        Format::Csv => csv_rows(
            &["p", "q", "r", "t", "dim", "faithful"],
            labels.iter().map(|l| {
                [l.p(), l.q(), l.r(), l.t()]
                    .map(|x| x.to_string())
                    .into_iter()
                    .chain([l.dim().to_string(), l.is_faithful().to_string()])
                    .collect::<Vec<_>>()
            }),
        )?,
        Format::Pretty => {
            let mut out = format!("{} irreps of HW_{}\n", labels.len(), 1u64 << c.s);
            for l in &labels {
                let _ = writeln!(
                    out,
                    "{:<16} dim {:<6} t {}{}",
                    l.to_string(),
                    l.dim(),
                    l.t(),
                    if l.is_faithful() { "  faithful" } else { "" }
                );
            }
            out
        }
    };
    Ok((text, true))
}

fn classes(c: &Common) -> Outcome {
    let classes = GroupParams::new(c.s)?.enumerate_classes()?;
    let text = match c.format {
        Format::Json => json(&classes)?,
        Format::Csv => csv_rows(
            &["representative", "k", "size"],
            classes
                .iter()
                .map(|cl| vec![cl.representative.to_string(), cl.k.to_string(), cl.size.to_string()]),
        )?,
        Format::Pretty => {
            let mut out = format!("{} conjugacy classes of HW_{}\n", classes.len(), 1u64 << c.s);
            for cl in &classes {
                let _ = writeln!(out, "{:<20} k {:<3} size {}", cl.representative.to_string(), cl.k, cl.size);
            }
            out
        }
    };
    Ok((text, true))
}

fn chartable(c: &Common) -> Outcome {
    let table = character_table(c.s)?;
    let text = match c.format {
        Format::Json => json(&table)?,
        Format::Csv => table.to_csv()?,
        Format::Pretty => {
            let mut header = vec!["irrep".to_string()];
            header.extend(table.classes.iter().map(|cl| format!("{} ({})", cl.representative, cl.size)));
            let mut rows = vec![header];
            for (l, vals) in table.irreps.iter().zip(&table.values) {
                let mut row = vec![l.to_string()];
                row.extend(vals.iter().map(|v| v.cell()));
                rows.push(row);
            }
            align(&rows)
        }
    };
    Ok((text, true))
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn matrix(c: &Common, label_text: &str, element: &str) -> Outcome {
    let l = label(c.s, label_text)?;
    let g: GroupElement = element.parse()?;
    let m = irrep_matrix(&l, &g)?;
    let text = match c.format {
        Format::Json => json(&m)?,
        Format::Csv => csv_rows(
            &["row", "col", "exp"],
            (0..m.dim()).map(|k| {
                let (row, col, exp) = m.entry(k);
                vec![row.to_string(), col.to_string(), exp.to_string()]
            }),
        )?,
        Format::Pretty => {
            let d = m.dim();
            let mut rows = Vec::with_capacity(d);
            for k in 0..d {
                let (_, col, exp) = m.entry(k);
                rows.push((0..d).map(|j| if j == col { format!("w^{exp}") } else { "0".into() }).collect());
            }
            format!(
                "Gamma[{l}]({g}), w = exp(2 pi i / {})\n{}",
                m.root_modulus(),
                align(&rows)
            )
        }
    };
    Ok((text, true))
}

fn fusion_csv(rows: &[FusionRow]) -> Result<String, Failure> {
    csv_rows(
        &["left", "right", "label", "mult"],
        rows.iter().flat_map(|row| {
            row.terms.iter().map(move |t| {
                vec![row.left.to_string(), row.right.to_string(), t.label.to_string(), t.mult.to_string()]
            })
        }),
    )
}

fn fuse(c: &Common, left: &str, right: &str) -> Outcome {
    let row = fuse_row(&label(c.s, left)?, &label(c.s, right)?)?;
    let text = match c.format {
        Format::Json => json(&row)?,
        Format::Csv => fusion_csv(std::slice::from_ref(&row))?,
        Format::Pretty => format!("{}\n", row.render()),
    };
    Ok((text, true))
}

fn fuse_all(c: &Common) -> Outcome {
    let table = fusion_table(c.s)?;
    let text = match c.format {
        Format::Json => json(&table)?,
        Format::Csv => table.to_csv()?,
        Format::Pretty => table.rows.iter().map(|r| format!("{}\n", r.render())).collect(),
    };
    Ok((text, true))
}

#[derive(Serialize)]
struct FourierOutput {
    label: IrrepLabel,
    fd: DenseUnitary,
    eigenvalues: Vec<[f64; 2]>,
    report: FourierReport,
}

fn fourier_output(l: &IrrepLabel) -> Result<FourierOutput, Failure> {
    let eig = eigensystem_y(l)?;
    Ok(FourierOutput {
        label: *l,
        fd: fourier_fd(l)?,
        eigenvalues: eig.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
        report: verify_fourier_relations(l)?,
    })
}

fn fourier_ok(r: &FourierReport) -> bool {
    r.structural_ok() && r.conjugation_to_x_inverse_ok()
}

fn fourier(c: &Common, label_text: Option<&str>) -> Outcome {
    let labels = match label_text {
        Some(t) => {
            let l = label(c.s, t)?;
            if l.p() == 0 {
                return Err(Failure::Input(format!(
                    "label {l} is one-dimensional; the Fourier transform needs p != 0"
                )));
            }
            vec![l]
        }
        None => enumerate_irreps(c.s)?.into_iter().filter(|l| l.p() != 0).collect(),
    };
    let outputs = labels.iter().map(fourier_output).collect::<Result<Vec<_>, _>>()?;
    let ok = outputs.iter().all(|o| fourier_ok(&o.report));
    let text = match (c.format, label_text) {
        (Format::Json, Some(_)) => json(&outputs[0])?,
        (Format::Json, None) => json(&outputs.iter().map(|o| &o.report).collect::<Vec<_>>())?,
        (Format::Csv, _) => csv_rows(
            &[
                "label",
                "unitarity_fd",
                "fourth_power",
                "eigen_residual",
                "eigenvalue_equation",
                "forward_off_diagonal",
                "inverse_off_diagonal",
                "conjugation_to_x_inverse",
                "conjugation_to_x",
            ],
            outputs.iter().map(|o| {
                let r = &o.report;
                vec![
                    r.label.to_string(),
                    format!("{:e}", r.unitarity_fd),
                    format!("{:e}", r.fourth_power),
                    format!("{:e}", r.eigen_residual),
                    format!("{:e}", r.eigenvalue_equation),
                    format!("{:e}", r.forward_off_diagonal),
                    format!("{:e}", r.inverse_off_diagonal),
                    format!("{:e}", r.conjugation_to_x_inverse.unwrap_or(f64::NAN)),
                    format!("{:e}", r.conjugation_to_x.unwrap_or(f64::NAN)),
                ]
            }),
        )?,
        (Format::Pretty, _) => {
            let mut out = String::new();
            for o in &outputs {
                render_fourier_pretty(&mut out, o, label_text.is_some());
            }
            out
        }
    };
    Ok((text, ok))
}

fn render_fourier_pretty(out: &mut String, o: &FourierOutput, with_matrix: bool) {
    let r = &o.report;
    let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "label {} (dim {})", o.label, o.label.dim());
    if with_matrix {
        let _ = writeln!(out, "F_D =");
        for i in 0..o.fd.dim() {
            let cells: Vec<String> = (0..o.fd.dim())
                .map(|j| {
                    let z = o.fd.get(i, j);
                    format!("[{:.6}, {:.6}]", z.re + 0.0, z.im + 0.0)
                })
                .collect();
            let _ = writeln!(out, "  {}", cells.join(" "));
        }
        let eig: Vec<String> = o.eigenvalues.iter().map(|[a, b]| format!("[{:.6}, {:.6}]", a + 0.0, b + 0.0)).collect();
        let _ = writeln!(out, "eigenvalues of y: {}", eig.join(" "));
    }
    let orient: Vec<&str> = r
        .diagonalizing
        .iter()
        .map(|o| match o {
            hwgroup::fourier::Orientation::Forward => "F y F^-1",
            hwgroup::fourier::Orientation::Inverse => "F^-1 y F",
        })
        .collect();
    let _ = writeln!(out, "  {} structure (unitarity, F^4, eigen-system)", status(r.structural_ok()));
    let _ = writeln!(out, "  diagonalizing orientation: {}", if orient.is_empty() { "none".into() } else { orient.join(", ") });
    if let Some(v) = r.conjugation_to_x_inverse {
        let _ = writeln!(out, "  {} F y^u F^-1 = w^(ru-q) x^-1   residual {v:.3e}", status(r.conjugation_to_x_inverse_ok()));
    }
    if let Some(v) = r.conjugation_to_x {
        let _ = writeln!(out, "  {} F^-1 y^u F = w^(ru-q) x      residual {v:.3e}", status(r.conjugation_to_x_ok()));
    }
}

fn run_verify(c: &Common, level: Level, seed: u64) -> Outcome {
    let level = match level {
        Level::Full => VerifyLevel::Full,
        Level::Sampled => VerifyLevel::Sampled,
    };
    let report = verify(c.s, level, seed)?;
    let text = match c.format {
        Format::Json => json(&report)?,
        Format::Csv => csv_rows(
            &["name", "status", "count", "failures", "max_residual", "detail"],
            report.checks.iter().map(|ch| {
                vec![
                    ch.name.clone(),
                    if ch.passed() { "pass" } else { "fail" }.to_string(),
                    ch.count.to_string(),
                    ch.failures.to_string(),
                    ch.max_residual.map(|r| format!("{r:e}")).unwrap_or_default(),
                    ch.detail.clone().unwrap_or_default(),
                ]
            }),
        )?,
        Format::Pretty => report.render_pretty(),
    };
    eprintln!("hw: verification took {:.2?}", report.elapsed());
    Ok((text, report.passed()))
}
