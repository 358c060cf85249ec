//! Command implementations behind the `hlya` binary. Every command returns a
//! serializable [`Report`]; the binary prints it as JSON or as a table.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use hlya_core::algebra::io::AlgebraFile;
use hlya_core::coboundary::{CochainComplex, Level};
use hlya_core::cochain::CochainEntry;
use hlya_core::cohomology::{h2h3, is_coboundary_2, pair_from_coordinates, CohomologyReport};
use hlya_core::deformation::{
    infinitesimal, obstruction_pair, second_order_candidate, second_order_probe, trivialize,
    verify_deformation, verify_equivalence, Deformation, DeformationFile, DeformationReport, Gauge,
    ProbeReport, Trivialization,
};
use hlya_core::derivations::{check_der_is_lie, DerivationReport};
use hlya_core::{Algebra, AxiomReport, Error, Matrix, Rational, Result, Vector};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check the eight defining identities on an algebra file.
    Check { algebra: PathBuf },
    /// Cocycles, coboundaries and cohomology in degrees 1, 2-3 and 4-5.
    Cohomology { algebra: PathBuf },
    /// Twisted derivation spaces and closure of their bracket.
    Derive {
        algebra: PathBuf,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Verify the deformation equations at every order.
    DeformCheck {
        deformation: PathBuf,
        /// Truncation order; defaults to the order in the file.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Gauge a deformation to the null one, or report where this is obstructed.
    Trivialize {
        deformation: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Compare two deformations: infinitesimal classes, and a gauge if given.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Gauge file; checks that it carries the first deformation to the second.
        #[arg(long)]
        gauge: Option<PathBuf>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Obstruction pairs and the second-order probe on 2-cocycles.
    Obstruct {
        algebra: PathBuf,
        /// Seed for the random cocycle draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cocycles probed in addition to the Z basis.
        #[arg(long, default_value_t = 0)]
        draws: usize,
    },
    /// Matrix of one coboundary operator: delta1, delta2, d2 or delta3.
    DumpOperator { algebra: PathBuf, level: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub algebra: String,
    pub dim: usize,
    pub all_pass: bool,
    pub axioms: AxiomReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformCheckReport {
    pub base: String,
    pub order: usize,
    pub all_pass: bool,
    pub equations: DeformationReport,
}

/// A gauge file: `phi` lists `[i, matrix rows]` for the nonzero `phi_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeFile {
    pub order: usize,
    #[serde(default)]
    pub phi: Vec<(usize, Vec<Vec<Rational>>)>,
}

impl GaugeFile {
    pub fn from_gauge(g: &Gauge) -> Self {
        let phi = (1..=g.order())
            .filter(|&i| !g.phi(i).is_zero())
            .map(|i| (i, rows(g.phi(i))))
            .collect();
        GaugeFile {
            order: g.order(),
            phi,
        }
    }

    pub fn to_gauge(&self, base: &Algebra) -> Result<Gauge> {
        let d = base.dim();
        let mut phis = vec![Matrix::zeros(d, d); self.order];
        for (pos, (i, m)) in self.phi.iter().enumerate() {
            if *i == 0 || *i > self.order {
                return Err(Error::InvalidInput(format!(
                    "phi[{pos}]: order {i} out of range 1..={}",
                    self.order
                )));
            }
            phis[i - 1] = Matrix::from_rows(m.clone())?;
        }
        Gauge::new(base, phis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivializeReport {
    pub base: String,
    pub order: usize,
    pub trivial: bool,
    /// Order at which a non-trivial cocycle pair remains.
    pub obstructed_at: Option<usize>,
    /// Gauge accumulated so far; for a trivial deformation it maps the input to the null one.
    pub gauge: GaugeFile,
    pub f: Option<Vec<CochainEntry>>,
    pub g: Option<Vec<CochainEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivReport {
    pub base: String,
    pub order: usize,
    /// Whether the infinitesimals differ by a coboundary.
    pub infinitesimals_cohomologous: bool,
    /// `h` with `delta^1 h = (f_1' - f_1, g_1' - g_1)`, as a matrix.
    pub witness: Option<Vec<Vec<Rational>>>,
    /// Whether the given gauge carries the first deformation to the second.
    pub gauge_verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeDraw {
    /// `basis i` or `random i`.
    pub source: String,
    /// Coordinates of `(f_1, g_1)` in `C^2 x C^3`.
    pub cocycle: Vec<Rational>,
    pub obstruction_zero: bool,
    pub in_z4z5: bool,
    /// Present when `(F, G)` is a `delta^2` image, so a second-order term exists.
    pub probe: Option<ProbeReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructReport {
    pub algebra: String,
    pub seed: u64,
    pub draws: Vec<ProbeDraw>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorReport {
    pub algebra: String,
    pub level: Level,
    pub domain: Vec<(usize, usize)>,
    pub codomain: Vec<(usize, usize)>,
    pub rows: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "report", rename_all = "kebab-case")]
pub enum Report {
    Check(CheckReport),
    Cohomology(CohomologyReport),
    Derive(DerivationReport),
    DeformCheck(DeformCheckReport),
    Trivialize(TrivializeReport),
    Equiv(EquivReport),
    Obstruct(ObstructReport),
    DumpOperator(OperatorReport),
}

fn rows(m: &Matrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidInput(msg) => Error::InvalidInput(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Structure constants as written, axioms unchecked.
pub fn load_algebra_unchecked(path: &Path) -> Result<Algebra> {
    let text = read(path)?;
    let file: AlgebraFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: algebra file: {e}", path.display())))?;
    with_path(path, file.to_algebra())
}

pub fn load_algebra(path: &Path) -> Result<Algebra> {
    load_algebra_unchecked(path)?.verified()
}

/// A base given by path is resolved relative to the deformation file.
pub fn load_deformation(path: &Path, order: Option<usize>) -> Result<Deformation> {
    let text = read(path)?;
    let file: DeformationFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: deformation file: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let d = with_path(path, file.to_deformation(|p| load_algebra(&dir.join(p))))?;
    Ok(match order {
        Some(n) => d.with_order(n),
        None => d,
    })
}

pub fn run(config: &RunConfig) -> Result<Report> {
    match &config.command {
        Command::Check { algebra } => {
            let a = load_algebra_unchecked(algebra)?;
            let axioms = a.check_axioms();
            Ok(Report::Check(CheckReport {
                algebra: a.name().to_string(),
                dim: a.dim(),
                all_pass: axioms.all_pass(),
                axioms,
            }))
        }
        Command::Cohomology { algebra } => {
            let c = CochainComplex::new(&load_algebra(algebra)?)?;
            Ok(Report::Cohomology(CohomologyReport::compute(&c)?))
        }
        Command::Derive { algebra, k_max } => Ok(Report::Derive(check_der_is_lie(
            &load_algebra(algebra)?,
            *k_max,
        )?)),
        Command::DeformCheck { deformation, order } => {
            let d = load_deformation(deformation, *order)?;
            let equations = verify_deformation(&d);
            Ok(Report::DeformCheck(DeformCheckReport {
                base: d.base().name().to_string(),
                order: d.order(),
                all_pass: equations.all_pass(),
                equations,
            }))
        }
        Command::Trivialize { deformation, order } => {
            let d = load_deformation(deformation, *order)?;
            let c = CochainComplex::new(d.base())?;
            let (trivial, obstructed_at, gauge, f, g) = match trivialize(&c, &d)? {
                Trivialization::Trivial(gauge) => (true, None, gauge, None, None),
                Trivialization::Obstructed { r, gauge, f, g } => (
                    false,
                    Some(r),
                    gauge,
                    Some(f.to_entries()),
                    Some(g.to_entries()),
                ),
            };
            Ok(Report::Trivialize(TrivializeReport {
                base: d.base().name().to_string(),
                order: d.order(),
                trivial,
                obstructed_at,
                gauge: GaugeFile::from_gauge(&gauge),
                f,
                g,
            }))
        }
        Command::Equiv {
            first,
            second,
            gauge,
            order,
        } => {
            let d1 = load_deformation(first, *order)?;
            let d2 = load_deformation(second, *order)?;
            if d1.base() != d2.base() || d1.order() != d2.order() {
                return Err(Error::BaseMismatch(format!(
                    "{} (order {}) vs {} (order {})",
                    d1.base().name(),
                    d1.order(),
                    d2.base().name(),
                    d2.order()
                )));
            }
            let c = CochainComplex::new(d1.base())?;
            let (f1, g1) = infinitesimal(&c, &d1)?;
            let (f2, g2) = infinitesimal(&c, &d2)?;
            let witness = is_coboundary_2(&c, &f2.sub(&f1), &g2.sub(&g1))?;
            let gauge_verified = match gauge {
                Some(path) => {
                    let file: GaugeFile = serde_json::from_str(&read(path)?).map_err(|e| {
                        Error::InvalidInput(format!("{}: gauge file: {e}", path.display()))
                    })?;
                    let p = with_path(path, file.to_gauge(d1.base()))?;
                    if p.order() != d1.order() {
                        return Err(Error::BaseMismatch(format!(
                            "gauge of order {} for deformations of order {}",
                            p.order(),
                            d1.order()
                        )));
                    }
                    Some(verify_equivalence(&d1, &d2, &p)?)
                }
                None => None,
            };
            Ok(Report::Equiv(EquivReport {
                base: d1.base().name().to_string(),
                order: d1.order(),
                infinitesimals_cohomologous: witness.is_some(),
                witness: witness.map(|h| rows(&h.to_matrix())),
                gauge_verified,
            }))
        }
        Command::Obstruct {
            algebra,
            seed,
            draws,
        } => {
            let a = load_algebra(algebra)?;
            let c = CochainComplex::new(&a)?;
            Ok(Report::Obstruct(obstruct(&c, *seed, *draws)?))
        }
        Command::DumpOperator { algebra, level } => {
            let level = Level::parse(level).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown level '{level}', expected delta1, delta2, d2 or delta3"
                ))
            })?;
            let a = load_algebra(algebra)?;
            let c = CochainComplex::new(&a)?;
            let m = c.operator(level)?;
            Ok(Report::DumpOperator(OperatorReport {
                algebra: a.name().to_string(),
                level,
                domain: m.domain.clone(),
                codomain: m.codomain.clone(),
                rows: rows(&m.matrix),
            }))
        }
    }
}

fn obstruct(c: &CochainComplex, seed: u64, draws: usize) -> Result<ObstructReport> {
    let z = h2h3(c)?.z;
    let basis = z.basis_vectors();
    let mut inputs: Vec<(String, Vector)> = basis
        .iter()
        .enumerate()
        .map(|(i, v)| (format!("basis {}", i + 1), v.clone()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..draws {
        let mut v = Vector::zeros(z.ambient_dim());
        for b in &basis {
            let w = Rational::new(
                rand::Rng::gen_range(&mut rng, -3..=3),
                rand::Rng::gen_range(&mut rng, 1..=2),
            );
            v.add_scaled(&w, b);
        }
        inputs.push((format!("random {}", i + 1), v));
    }
    let mut out = Vec::with_capacity(inputs.len());
    for (source, v) in inputs {
        let (f1, g1) = pair_from_coordinates(c, 2, &v)?;
        let ob = obstruction_pair(c, &f1, &g1)?;
        let probe = match second_order_candidate(c, &ob)? {
            Some((f2, g2)) => Some(second_order_probe(c, &f1, &g1, &f2, &g2)?),
            None => None,
        };
        out.push(ProbeDraw {
            source,
            cocycle: v.into_inner(),
            obstruction_zero: ob.f.is_zero() && ob.g.is_zero(),
            in_z4z5: ob.in_z4z5,
            probe,
        });
    }
    Ok(ObstructReport {
        algebra: c.algebra().name().to_string(),
        seed,
        draws: out,
    })
}

/// Process exit status for a failed run: 3 when a proven identity failed,
/// 2 for anything wrong with the input.
pub fn exit_code(e: &Error) -> u8 {
    if e.is_theorem_violation() {
        3
    } else {
        2
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        let axiom_rows = |s: &mut String, prefix: &str, r: &AxiomReport| {
            for a in &r.results {
                let at = a
                    .counterexample
                    .as_ref()
                    .map(|t| format!("  at {t:?}"))
                    .unwrap_or_default();
                let _ = writeln!(s, "{prefix}({})  {}{at}", a.equation, verdict(a.passed));
            }
        };
        match self {
            Report::Check(r) => {
                let _ = writeln!(s, "{} (dim {})", r.algebra, r.dim);
                axiom_rows(&mut s, "  ", &r.axioms);
            }
            Report::Cohomology(r) => {
                let d = &r.dims;
                let _ = writeln!(s, "{}", r.algebra);
                let _ = writeln!(s, "  dim C^1..C^5   {:?}", r.cochain_dims);
                let _ = writeln!(s, "  H^1            {}", d.h1);
                let _ = writeln!(
                    s,
                    "  Z^2xZ^3  {:>4}   B^2xB^3  {:>4}   H^2xH^3  {:>4}",
                    d.z2z3, d.b2b3, d.h2h3
                );
                let _ = writeln!(
                    s,
                    "  Z^4xZ^5  {:>4}   B^4xB^5  {:>4}   H^4xH^5  {:>4}",
                    d.z4z5, d.b4b5, d.h4h5
                );
            }
            Report::Derive(r) => {
                let _ = writeln!(s, "{}", r.algebra);
                for l in &r.levels {
                    let _ = writeln!(s, "  dim Der_alpha^{}  {}", l.k, l.dim);
                }
                let _ = writeln!(
                    s,
                    "  brackets checked {}, closed: {}",
                    r.brackets_checked, r.closed
                );
            }
            Report::DeformCheck(r) => {
                let _ = writeln!(
                    s,
                    "deformation of {} to order {}: {}",
                    r.base,
                    r.order,
                    verdict(r.all_pass)
                );
                for (n, level) in r.equations.levels.iter().enumerate() {
                    if level.all_pass() {
                        let _ = writeln!(s, "  n={n}  (1)-(8) pass");
                    } else {
                        axiom_rows(&mut s, &format!("  n={n}  "), level);
                    }
                }
            }
            Report::Trivialize(r) => {
                let _ = match r.obstructed_at {
                    None => writeln!(
                        s,
                        "deformation of {} (order {}) is trivial",
                        r.base, r.order
                    ),
                    Some(n) => writeln!(
                        s,
                        "deformation of {} (order {}) is obstructed at order {n}",
                        r.base, r.order
                    ),
                };
                for (i, m) in &r.gauge.phi {
                    let _ = writeln!(s, "  phi_{i} = {}", matrix_text(m));
                }
            }
            Report::Equiv(r) => {
                let _ = writeln!(s, "deformations of {} (order {})", r.base, r.order);
                let _ = writeln!(
                    s,
                    "  infinitesimals cohomologous: {}",
                    r.infinitesimals_cohomologous
                );
                if let Some(w) = &r.witness {
                    let _ = writeln!(s, "  witness h = {}", matrix_text(w));
                }
                if let Some(ok) = r.gauge_verified {
                    let _ = writeln!(s, "  gauge verified: {ok}");
                }
            }
            Report::Obstruct(r) => {
                let _ = writeln!(s, "{} (seed {})", r.algebra, r.seed);
                let _ = writeln!(
                    s,
                    "  {:<12} {:>6} {:>6}  (5') (6') (7') (8')",
                    "cocycle", "F,G=0", "in Z"
                );
                for d in &r.draws {
                    let probe = match &d.probe {
                        Some(p) => [5, 6, 7, 8]
                            .map(|e| format!("{:<4}", verdict(p.passes(e))))
                            .join(" "),
                        None => "no second-order term".into(),
                    };
                    let _ = writeln!(
                        s,
                        "  {:<12} {:>6} {:>6}  {probe}",
                        d.source, d.obstruction_zero, d.in_z4z5
                    );
                }
            }
            Report::DumpOperator(r) => {
                let _ = writeln!(
                    s,
                    "{} on {}: {:?} -> {:?}",
                    r.level.name(),
                    r.algebra,
                    r.domain,
                    r.codomain
                );
                for row in &r.rows {
                    let cells: Vec<String> = row.iter().map(|q| format!("{q:>6}")).collect();
                    let _ = writeln!(s, "  {}", cells.join(" "));
                }
            }
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Table => self.to_table(),
        }
    }
}

fn matrix_text(m: &[Vec<Rational>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}
