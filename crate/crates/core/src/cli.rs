//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 when parameters fail validation, 1 on a
//! numerical failure and 64 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value as Json};

use crate::boundstates::{bound_states, pitchfork_scan};
use crate::contact::ContactParams;
use crate::error::{Error, Result};
use crate::kronig::{
    band_sweep, dirac_cone_bands, zone_grid, DiracConeParams, LatticeParams, PtNarrowBand,
};
use crate::numerics::C64;
use crate::output::{json_f64, Format, Table};
use crate::record::Record;
use crate::scattering::{s_eigenvalues, scatter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "contactband",
    version,
    about = "Point interactions and their periodic lattices: bound states, scattering, bands"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound-state roots and energies of a single contact.
    BoundStates {
        #[command(flatten)]
        contact: ContactArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Transmission and reflection amplitudes on a k grid.
    Scatter {
        #[command(flatten)]
        contact: ContactArgs,
        /// Wavenumber grid `start:stop:count`, both ends included.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// S-matrix eigenvalues and the broken flag on a k grid.
    SmatrixEigen {
        #[command(flatten)]
        contact: ContactArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bound-state roots of PT contacts along a line of alpha_I.
    Pitchfork {
        #[arg(long, allow_hyphen_values = true)]
        alpha_r: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Grid `start:stop:count` of alpha_I values.
        #[arg(long, allow_hyphen_values = true)]
        alpha_i: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact bands of the periodic lattice over the Brillouin zone.
    Bands {
        #[command(flatten)]
        contact: ContactArgs,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Two-band dispersion near a Dirac touching point.
    DiracScan {
        #[command(flatten)]
        contact: ContactArgs,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Mean root; with --varepsilon and --f, bypasses the contact flags.
        #[arg(long, allow_hyphen_values = true)]
        kappa_bar: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        varepsilon: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Band regime of a PT lattice, exact and narrow-band.
    Regimes {
        #[command(flatten)]
        contact: ContactArgs,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Writes the data behind the pitchfork and PT band figures.
    Figures {
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    Hermitian,
    #[value(alias = "pt_symmetric")]
    Pt,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Args)]
struct ContactArgs {
    #[arg(long, value_enum, default_value_t = ClassArg::Hermitian)]
    class: ClassArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_i: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Derived from the unit-determinant condition when omitted and beta != 0.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    theta: f64,
}

#[derive(Debug, Args)]
struct LatticeArgs {
    #[arg(long, allow_hyphen_values = true)]
    ell: f64,
    #[arg(long, default_value_t = 201)]
    nk: usize,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

fn missing(flag: &str) -> Error {
    Error::Domain(format!("missing required flag --{flag}"))
}

impl ContactArgs {
    fn build(&self) -> Result<ContactParams> {
        let beta = self.beta.ok_or_else(|| missing("beta"))?;
        let p = match self.class {
            ClassArg::Hermitian => {
                let alpha = self.alpha.ok_or_else(|| missing("alpha"))?;
                let delta = self.delta.ok_or_else(|| missing("delta"))?;
                let gamma = match self.gamma {
                    Some(g) => g,
                    None if beta != 0.0 => (alpha * delta - 1.0) / beta,
                    None => return Err(missing("gamma")),
                };
                ContactParams::hermitian(alpha, beta, gamma, delta)?
            }
            ClassArg::Pt => {
                let alpha = C64::new(
                    self.alpha_r.ok_or_else(|| missing("alpha-r"))?,
                    self.alpha_i.ok_or_else(|| missing("alpha-i"))?,
                );
                match self.gamma {
                    Some(g) => ContactParams::pt_symmetric(alpha, beta, g)?,
                    None if beta != 0.0 => ContactParams::pt_from_alpha(alpha, beta)?,
                    None => return Err(missing("gamma")),
                }
            }
        };
        Ok(p.with_theta(self.theta))
    }
}

/// Parses `start:stop:count` into `count` evenly spaced values including both ends.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::Parse(format!("grid `{text}` is not start:stop:count"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count < 2 || !start.is_finite() || !stop.is_finite() {
        return Err(Error::Domain(format!(
            "grid `{text}` needs finite ends and count >= 2"
        )));
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|j| {
            if j + 1 == count {
                stop
            } else {
                start + step * j as f64
            }
        })
        .collect())
}

fn record_meta(rec: &Record) -> Json {
    let mut m = Map::new();
    for (k, v) in rec.entries() {
        let value = v.parse::<f64>().map_or_else(|_| Json::from(v), json_f64);
        m.insert(k.to_string(), value);
    }
    Json::Object(m)
}

fn params_meta(p: &ContactParams) -> Map<String, Json> {
    let mut meta = Map::new();
    meta.insert("parameters".into(), record_meta(&p.to_record()));
    meta
}

fn bound_states_table(p: &ContactParams) -> Result<(Table, Map<String, Json>)> {
    let set = bound_states(p)?;
    let mut t = Table::new(&["index", "re_kappa", "im_kappa", "re_E", "im_E"]);
    for (i, (k, e)) in set.roots().iter().zip(set.energies()).enumerate() {
        t.push(vec![
            i.into(),
            k.re.into(),
            k.im.into(),
            e.re.into(),
            e.im.into(),
        ]);
    }
    let mut meta = params_meta(p);
    meta.insert("spectrum".into(), Json::from(format!("{:?}", set.kind())));
    Ok((t, meta))
}

fn scatter_table(p: &ContactParams, ks: &[f64]) -> Result<Table> {
    let mut t = Table::new(&[
        "k", "re_t", "im_t", "re_r", "im_r", "re_tp", "im_tp", "re_rp", "im_rp",
    ]);
    for &k in ks {
        let s = scatter(p, k)?;
        t.push(vec![
            k.into(),
            s.t.re.into(),
            s.t.im.into(),
            s.r.re.into(),
            s.r.im.into(),
            s.t_prime.re.into(),
            s.t_prime.im.into(),
            s.r_prime.re.into(),
            s.r_prime.im.into(),
        ]);
    }
    Ok(t)
}

fn eigen_table(p: &ContactParams, ks: &[f64]) -> Result<Table> {
    let mut t = Table::new(&[
        "k",
        "re_lambda_plus",
        "im_lambda_plus",
        "re_lambda_minus",
        "im_lambda_minus",
        "broken",
    ]);
    for &k in ks {
        let e = s_eigenvalues(p, k)?;
        t.push(vec![
            k.into(),
            e.lambda_plus.re.into(),
            e.lambda_plus.im.into(),
            e.lambda_minus.re.into(),
            e.lambda_minus.im.into(),
            e.broken().into(),
        ]);
    }
    Ok(t)
}

fn pitchfork_table(alpha_r: f64, beta: f64, grid: &[f64]) -> Result<Table> {
    let mut t = Table::new(&[
        "alpha_i",
        "re_kappa_plus",
        "re_kappa_minus",
        "im_kappa_plus",
        "im_kappa_minus",
        "admissible_count",
    ]);
    for row in pitchfork_scan(alpha_r, beta, grid)? {
        t.push(vec![
            row.alpha_i.into(),
            row.kappa_plus.re.into(),
            row.kappa_minus.re.into(),
            row.kappa_plus.im.into(),
            row.kappa_minus.im.into(),
            row.admissible.into(),
        ]);
    }
    Ok(t)
}

fn band_columns() -> Table {
    Table::new(&[
        "band", "k", "re_kappa", "im_kappa", "re_E", "im_E", "residual",
    ])
}

struct Emitted {
    table: Table,
    meta: Map<String, Json>,
    /// Structured-text sidecar written next to the output as `<output>.regime`.
    regime: Option<Record>,
}

impl Emitted {
    fn plain(table: Table, meta: Map<String, Json>) -> Self {
        Self {
            table,
            meta,
            regime: None,
        }
    }
}

fn bands_output(lat: &LatticeParams, n_k: usize) -> Result<Emitted> {
    let sweep = band_sweep(lat, n_k)?;
    let mut t = band_columns();
    let mut unbound = 0;
    for b in &sweep.bands {
        unbound += b.points.iter().filter(|p| !p.is_bound()).count();
        // points past the continuum edge carry no bound state and are left out
        for p in b.points.iter().filter(|p| p.is_bound()) {
            t.push(vec![
                b.band_index.into(),
                p.k.into(),
                p.kappa.re.into(),
                p.kappa.im.into(),
                p.energy.re.into(),
                p.energy.im.into(),
                p.residual.into(),
            ]);
        }
    }
    let mut meta = params_meta(lat.contact());
    meta.insert("ell".into(), json_f64(lat.ell()));
    meta.insert("regime".into(), Json::from(sweep.regime.as_str()));
    meta.insert("residual_max".into(), json_f64(sweep.max_residual()));
    meta.insert("unbound_points".into(), Json::from(unbound));
    meta.insert(
        "exceptional_k".into(),
        Json::Array(
            sweep
                .exceptional_points
                .iter()
                .map(|e| json_f64(e.k))
                .collect(),
        ),
    );
    Ok(Emitted {
        table: t,
        meta,
        regime: Some(sweep.summary.to_record()),
    })
}

fn dirac_output(params: DiracConeParams, ell: f64, n_k: usize) -> Result<Emitted> {
    let mut t = Table::new(&["k", "e_plus", "e_minus", "gap"]);
    for k in zone_grid(ell, n_k) {
        let d = dirac_cone_bands(&params, ell, k)?;
        t.push(vec![
            k.into(),
            d.e_plus.into(),
            d.e_minus.into(),
            d.gap.into(),
        ]);
    }
    let mut meta = Map::new();
    meta.insert("kappa_bar".into(), json_f64(params.kappa_bar));
    meta.insert("epsilon".into(), json_f64(params.epsilon));
    meta.insert("varepsilon".into(), json_f64(params.varepsilon));
    meta.insert("f".into(), json_f64(params.f));
    meta.insert("ell".into(), json_f64(ell));
    Ok(Emitted::plain(t, meta))
}

fn regimes_output(lat: &LatticeParams, n_k: usize) -> Result<Emitted> {
    let exact = band_sweep(lat, n_k)?;
    let mut t = Table::new(&[
        "method",
        "regime",
        "real_fraction",
        "min_gap",
        "k_at_min_gap",
    ]);
    let mut push = |method: &str, s: &crate::kronig::RegimeSummary| {
        t.push(vec![
            method.into(),
            s.regime.as_str().into(),
            s.real_fraction.into(),
            s.min_gap.into(),
            s.k_at_min_gap.into(),
        ]);
    };
    push("exact", &exact.summary);
    let mut meta = params_meta(lat.contact());
    meta.insert("ell".into(), json_f64(lat.ell()));
    match PtNarrowBand::from_lattice(lat) {
        Ok(model) => {
            push("narrow_band", &model.summary(n_k));
            meta.insert("w".into(), json_f64(model.w));
            meta.insert("varepsilon".into(), json_f64(model.varepsilon));
            meta.insert("narrow".into(), Json::from(model.is_narrow()));
        }
        Err(e) => {
            meta.insert("narrow_band_skipped".into(), Json::from(e.to_string()));
        }
    }
    Ok(Emitted {
        table: t,
        meta,
        regime: Some(exact.summary.to_record()),
    })
}

/// Figure panels reproduced by [`emit_figure_data`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Bound-state pitchfork, `α_R = −1`, `β = 1`, `α_I ∈ [0, 2]`.
    Fig1,
    /// Narrow bands, `ε² = 1.2`, `|α_I| < 1`: entirely real.
    Fig2a,
    /// `ε² = 0.5`, `|α_I| < 1`: real part of the partially real bands.
    Fig2b,
    /// `ε² = 0.5`, `|α_I| < 1`: imaginary part of the same bands.
    Fig2c,
    /// `ε² = 1.2`, `|α_I| > 1`: conjugate pair with constant real part.
    Fig2d,
}

impl Figure {
    pub const ALL: [Figure; 5] = [
        Figure::Fig1,
        Figure::Fig2a,
        Figure::Fig2b,
        Figure::Fig2c,
        Figure::Fig2d,
    ];

    pub fn stem(&self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2a => "fig2a",
            Figure::Fig2b => "fig2b",
            Figure::Fig2c => "fig2c",
            Figure::Fig2d => "fig2d",
        }
    }

    fn pt_model(&self) -> Option<(f64, bool, &'static str)> {
        match self {
            Figure::Fig1 => None,
            Figure::Fig2a => Some((1.2, false, "re_E")),
            Figure::Fig2b => Some((0.5, false, "re_E")),
            Figure::Fig2c => Some((0.5, false, "im_E")),
            Figure::Fig2d => Some((1.2, true, "im_E")),
        }
    }
}

const FIG_NK: usize = 201;

/// The table behind one figure panel, plus its sidecar description.
pub fn figure_table(fig: Figure) -> Result<(Table, Record)> {
    let mut rec = Record::new();
    let Some((e2, above, plotted)) = fig.pt_model() else {
        let grid = parse_grid("0:2:401")?;
        rec.push("fig1.alpha_r", -1.0)
            .push("fig1.beta", 1.0)
            .push("fig1.alpha_i", "0:2:401");
        return Ok((pitchfork_table(-1.0, 1.0, &grid)?, rec));
    };
    let model = PtNarrowBand {
        kappa_bar: 1.0,
        w: 1.0,
        varepsilon: e2.sqrt(),
        above_transition: above,
        ell: 1.0,
        theta: 0.0,
    };
    // both bands shifted by the pair mean −κ̄²/2 so the pattern is centred on zero
    let offset = 0.5 * model.kappa_bar * model.kappa_bar;
    let mut t = Table::new(&["k", "re_E_plus", "im_E_plus", "re_E_minus", "im_E_minus"]);
    for k in zone_grid(model.ell, FIG_NK) {
        let p = model.eval(k);
        t.push(vec![
            k.into(),
            (p.e_plus.re + offset).into(),
            p.e_plus.im.into(),
            (p.e_minus.re + offset).into(),
            p.e_minus.im.into(),
        ]);
    }
    let stem = fig.stem();
    rec.push(&format!("{stem}.w"), model.w)
        .push(&format!("{stem}.ell"), model.ell)
        .push(&format!("{stem}.kappa_bar"), model.kappa_bar)
        .push(&format!("{stem}.varepsilon_squared"), e2)
        .push(
            &format!("{stem}.transition"),
            if above { "above" } else { "below" },
        )
        .push(&format!("{stem}.plotted"), plotted)
        .push(&format!("{stem}.energy_offset"), offset)
        .push(&format!("{stem}.nk"), FIG_NK);
    Ok((t, rec))
}

/// Writes every figure table into `dir` plus a `figures.meta` sidecar.
pub fn emit_figure_data(dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut written = Vec::new();
    let mut meta = Record::new();
    meta.push(
        "offset_rule",
        "both bands shifted by the same constant, the pair mean -kappa_bar^2/2",
    );
    for fig in Figure::ALL {
        let (table, rec) = figure_table(fig)?;
        for (k, v) in rec.entries() {
            meta.push(k, v);
        }
        let mut jmeta = Map::new();
        jmeta.insert("figure".into(), record_meta(&rec));
        let path = dir.join(format!("{}.{ext}", fig.stem()));
        std::fs::write(&path, table.render(format, jmeta))?;
        written.push(path);
    }
    let meta_path = dir.join("figures.meta");
    std::fs::write(&meta_path, meta.to_string())?;
    written.push(meta_path);
    Ok(written)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invalid(_) | Error::WrongClass { .. } | Error::Domain(_) | Error::Parse(_) => {
            EXIT_VALIDATION
        }
        _ => EXIT_NUMERICAL,
    }
}

fn sidecar_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".regime");
    PathBuf::from(s)
}

fn write_emitted(
    e: Emitted,
    out: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    let text = e.table.render(out.format.into(), e.meta);
    match &out.output {
        Some(path) => {
            std::fs::write(path, text)?;
            if let Some(rec) = e.regime {
                std::fs::write(sidecar_path(path), rec.to_string())?;
            }
        }
        None => {
            stdout.write_all(text.as_bytes())?;
            if let Some(rec) = e.regime {
                stderr.write_all(rec.to_string().as_bytes())?;
            }
        }
    }
    Ok(())
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match command {
        Command::BoundStates { contact, out } => {
            let (t, meta) = bound_states_table(&contact.build()?)?;
            write_emitted(Emitted::plain(t, meta), &out, stdout, stderr)
        }
        Command::Scatter { contact, k, out } => {
            let p = contact.build()?;
            let t = scatter_table(&p, &parse_grid(&k)?)?;
            write_emitted(Emitted::plain(t, params_meta(&p)), &out, stdout, stderr)
        }
        Command::SmatrixEigen { contact, k, out } => {
            let p = contact.build()?;
            let t = eigen_table(&p, &parse_grid(&k)?)?;
            write_emitted(Emitted::plain(t, params_meta(&p)), &out, stdout, stderr)
        }
        Command::Pitchfork {
            alpha_r,
            beta,
            alpha_i,
            out,
        } => {
            let t = pitchfork_table(alpha_r, beta, &parse_grid(&alpha_i)?)?;
            let mut meta = Map::new();
            meta.insert("alpha_r".into(), json_f64(alpha_r));
            meta.insert("beta".into(), json_f64(beta));
            write_emitted(Emitted::plain(t, meta), &out, stdout, stderr)
        }
        Command::Bands {
            contact,
            lattice,
            out,
        } => {
            let lat = LatticeParams::new(contact.build()?, lattice.ell)?;
            write_emitted(bands_output(&lat, lattice.nk)?, &out, stdout, stderr)
        }
        Command::DiracScan {
            contact,
            lattice,
            kappa_bar,
            varepsilon,
            f,
            out,
        } => {
            let params = match (kappa_bar, varepsilon, f) {
                (Some(kb), Some(ve), Some(f)) => {
                    DiracConeParams::from_scaled(kb, ve, f, lattice.ell)?
                }
                (None, None, None) => {
                    let lat = LatticeParams::new(contact.build()?, lattice.ell)?;
                    DiracConeParams::from_lattice(&lat)?
                }
                _ => {
                    return Err(Error::Domain(
                        "--kappa-bar, --varepsilon and --f go together".into(),
                    ))
                }
            };
            write_emitted(
                dirac_output(params, lattice.ell, lattice.nk)?,
                &out,
                stdout,
                stderr,
            )
        }
        Command::Regimes {
            contact,
            lattice,
            out,
        } => {
            let lat = LatticeParams::new(contact.build()?, lattice.ell)?;
            write_emitted(regimes_output(&lat, lattice.nk)?, &out, stdout, stderr)
        }
        Command::Figures { out_dir, format } => {
            for path in emit_figure_data(&out_dir, format.into())? {
                writeln!(stderr, "wrote {}", path.display())?;
            }
            Ok(())
        }
    }
}

/// Runs the command line `argv` (program name first) with explicit streams.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let text = e.render().to_string();
            if informational {
                let _ = stdout.write_all(text.as_bytes());
                return EXIT_OK;
            }
            let _ = stderr.write_all(text.as_bytes());
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_both_ends() {
        let g = parse_grid("0:2:401").unwrap();
        assert_eq!(g.len(), 401);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[200], 1.0);
        assert_eq!(g[400], 2.0);
        assert_eq!(parse_grid("-1:1:3").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:1").is_err());
    }

    #[test]
    fn figure_panels() {
        let (fig1, _) = figure_table(Figure::Fig1).unwrap();
        let ai = fig1.column_f64("alpha_i").unwrap();
        let j = ai.iter().position(|&a| a == 1.0).unwrap();
        assert_eq!(fig1.column_f64("re_kappa_plus").unwrap()[j], 1.0);
        assert_eq!(fig1.column_f64("re_kappa_minus").unwrap()[j], 1.0);

        let (a, _) = figure_table(Figure::Fig2a).unwrap();
        assert!(a.column_f64("im_E_plus").unwrap().iter().all(|&v| v == 0.0));
        let (d, _) = figure_table(Figure::Fig2d).unwrap();
        assert!(d.column_f64("re_E_plus").unwrap().iter().all(|&v| v == 0.0));
        let (ip, im) = (
            d.column_f64("im_E_plus").unwrap(),
            d.column_f64("im_E_minus").unwrap(),
        );
        assert!(ip.iter().zip(&im).all(|(a, b)| *a == -b && *a != 0.0));
    }

    #[test]
    fn usage_errors_exit_64() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(
            run_with(["contactband", "no-such-command"], &mut out, &mut err),
            EXIT_USAGE
        );
        assert_eq!(
            run_with(
                ["contactband", "bound-states", "--bogus", "1"],
                &mut out,
                &mut err
            ),
            EXIT_USAGE
        );
    }
}
