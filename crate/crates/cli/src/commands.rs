use serde::{Deserialize, Serialize};
use tfcert::certify::{
    check_corollary1, check_corollary2, check_corollary3, check_lemma1, check_theorem1,
    check_theorem2, check_theorem3, default_stft_lattice, Certificate, CertifyOptions,
};
use tfcert::oracle::{
    collocation_rank, default_collocation_samples, dependence_residual_er, gram_matrix,
    metaplectic_residual, stft_identity_residual, IndependenceReport, IndependenceVerdict,
    MetaplecticKind, MetaplecticParams, Parameterization, ResidualReport,
};
use tfcert::reproduce::{self, er_lattice, Recipe};
use tfcert::tfops::GridSpec;
use tfcert::windowsearch::{self, SearchOptions};

use crate::config::{check_output_path, RunConfig};
use crate::output::{emit, Document, Format};
use crate::{CertifyKind, Cli, Command, Failure, OracleKind, Outcome};

/// Residual reports with the pass rule applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub residuals: Vec<ResidualReport>,
    pub tolerance: f64,
    /// Index of the residual that decides `pass`.
    pub decisive: usize,
    pub pass: bool,
}

impl ResidualSummary {
    fn new(residuals: Vec<ResidualReport>, tolerance: f64, decisive: usize) -> Self {
        let pass = residuals[decisive].max_abs_residual < tolerance;
        Self {
            residuals,
            tolerance,
            decisive,
            pass,
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("identity,max_abs_residual,points,phase_re,phase_im\n");
        for r in &self.residuals {
            out.push_str(&format!(
                "\"{}\",{:e},{},{:e},{:e}\n",
                r.identity_name.replace('"', "'"),
                r.max_abs_residual,
                r.points,
                r.best_phase.re,
                r.best_phase.im
            ));
        }
        out
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    cfg: RunConfig,
    format: Format,
}

impl Ctx<'_> {
    fn opts(&self) -> CertifyOptions {
        CertifyOptions {
            rigorous: self.cli.rigorous,
            sample_grid: self.cfg.sample_grid,
            ..CertifyOptions::default()
        }
    }

    fn write<T: Serialize>(
        &self,
        command: &str,
        report: &T,
        csv: Option<String>,
    ) -> Result<(), Failure> {
        let text = match self.format {
            Format::Json => Document::new(command, report, !self.cli.no_meta).to_json()?,
            Format::Csv => csv.ok_or_else(|| {
                Failure::input(format!("'{command}' has no CSV form; use --format json"))
            })?,
        };
        let out = self.cli.out.as_ref().or(self.cfg.output.as_ref());
        emit(&text, out.map(|p| p.as_path()))
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig {
            schema: 1,
            dimension: 1,
            ..RunConfig::default()
        },
    };
    if let Some(out) = &cli.out {
        check_output_path(out)?;
    }
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let needs_config = !matches!(cli.command, Command::Reproduce { .. })
        && !matches!(
            cli.command,
            Command::Oracle {
                which: OracleKind::ErResidual
            }
        );
    if needs_config && cli.config.is_none() {
        return Err(Failure::input("this command needs --config PATH"));
    }
    let ctx = Ctx { cli, cfg, format };
    match &cli.command {
        Command::Certify { which } => certify(&ctx, *which),
        Command::Oracle { which } => oracle(&ctx, *which),
        Command::WindowSearch => window_search(&ctx),
        Command::Reproduce { name } => reproduce_cmd(&ctx, name),
    }
}

fn certify(ctx: &Ctx, which: CertifyKind) -> Result<Outcome, Failure> {
    let cfg = &ctx.cfg;
    let f = cfg.function()?;
    let lam = cfg.lambda()?;
    let opts = ctx.opts();
    let (name, cert): (&str, Certificate) = match which {
        CertifyKind::Lemma1 => ("certify lemma1", check_lemma1(&f, &lam.times())?),
        CertifyKind::Thm1 => ("certify thm1", check_theorem1(&f, &lam, &opts)?),
        CertifyKind::Cor1 => (
            "certify cor1",
            check_corollary1(&f, &lam, cfg.require(&cfg.r, "r")?, &opts)?,
        ),
        CertifyKind::Cor2 => (
            "certify cor2",
            check_corollary2(&f, &lam, &cfg.quad_grid(), &opts)?,
        ),
        CertifyKind::Cor3 => (
            "certify cor3",
            check_corollary3(&f, &lam, cfg.require(&cfg.r, "r")?, &cfg.quad_grid(), &opts)?,
        ),
        CertifyKind::Thm2 => ("certify thm2", check_theorem2(&f, &lam, &opts)?),
        CertifyKind::Thm3 => {
            let g = cfg.window()?;
            let lattice = cfg
                .lattice
                .unwrap_or_else(|| default_stft_lattice(cfg.dimension));
            (
                "certify thm3",
                check_theorem3(&f, &g, &lam, &cfg.quad_grid(), &lattice, &opts)?,
            )
        }
    };
    ctx.write(name, &cert, None)?;
    Ok(if cert.is_certified() {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn independence_outcome(r: &IndependenceReport) -> Outcome {
    match r.verdict {
        IndependenceVerdict::Independent => Outcome::Positive,
        IndependenceVerdict::Dependent => Outcome::Negative,
        IndependenceVerdict::Inconclusive => Outcome::Inconclusive,
    }
}

fn oracle(ctx: &Ctx, which: OracleKind) -> Result<Outcome, Failure> {
    let cfg = &ctx.cfg;
    let summary = match which {
        OracleKind::Gram | OracleKind::Collocation => {
            let f = cfg.function()?;
            let lam = cfg.lambda()?;
            let (name, report) = if which == OracleKind::Gram {
                ("oracle gram", gram_matrix(&f, &lam, &cfg.quad_grid())?)
            } else {
                let samples = match &cfg.samples {
                    Some(s) => s.clone(),
                    None => {
                        let grid = cfg.sample_grid.unwrap_or_else(|| cfg.quad_grid());
                        default_collocation_samples(&f, &lam, &grid)
                    }
                };
                ("oracle collocation", collocation_rank(&f, &lam, &samples)?)
            };
            ctx.write(name, &report, Some(report.matrix_csv()))?;
            return Ok(independence_outcome(&report));
        }
        OracleKind::ErResidual => {
            let lattice = cfg.lattice.unwrap_or_else(er_lattice);
            let r = dependence_residual_er(&lattice, cfg.quad_tol.unwrap_or(1e-9))?;
            (
                "oracle er-residual",
                ResidualSummary::new(vec![r], cfg.tolerance.unwrap_or(1e-6), 0),
            )
        }
        OracleKind::StftIdentity => {
            let f = cfg.function()?;
            let g = cfg.window()?;
            let lattice = match cfg.lattice {
                Some(l) => l,
                None => GridSpec::new(3.0, 33, 0.0).map_err(Failure::from)?,
            };
            let u = cfg.require(&cfg.u, "u")?;
            let eta = cfg.require(&cfg.eta, "eta")?;
            let r = stft_identity_residual(&f, &g, &u, &eta, &lattice, &cfg.quad_grid())?;
            (
                "oracle stft-identity",
                ResidualSummary::new(vec![r], cfg.tolerance.unwrap_or(1e-8), 0),
            )
        }
        OracleKind::Metaplectic => {
            let f = cfg.function()?;
            let kind: MetaplecticKind = cfg.require(&cfg.kind, "kind")?;
            let params = MetaplecticParams {
                r: cfg.require(&cfg.r, "r")?,
                x: cfg.require(&cfg.x, "x")?,
                omega: cfg.require(&cfg.omega, "omega")?,
            };
            let sample = match cfg.sample_grid {
                Some(s) => s,
                None => GridSpec::new(3.0, 61, 0.0).map_err(Failure::from)?,
            };
            let forms = [Parameterization::Printed, Parameterization::Standard];
            let rs = metaplectic_residual(kind, &params, &f, &sample, &cfg.quad_grid(), &forms)?;
            (
                "oracle metaplectic",
                ResidualSummary::new(rs, cfg.tolerance.unwrap_or(1e-6), 1),
            )
        }
    };
    let (name, summary) = summary;
    ctx.write(name, &summary, Some(summary.to_csv()))?;
    Ok(if summary.pass {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn window_search(ctx: &Ctx) -> Result<Outcome, Failure> {
    let cfg = &ctx.cfg;
    let f = cfg.function()?;
    let radius = cfg.require(&cfg.radius, "R")?;
    let n = cfg.require(&cfg.n, "N")?;
    let seed = ctx.cli.seed.or(cfg.seed).unwrap_or(0);
    let mut opts = SearchOptions::default();
    if let Some(l) = cfg.lattice {
        opts.lattice = l;
    }
    if let Some(g) = cfg.grid {
        opts.grid = g;
    }
    let result = windowsearch::search_with(
        &f,
        radius,
        n,
        cfg.degree.unwrap_or(0),
        cfg.budget.unwrap_or(50),
        seed,
        &opts,
    )?;
    ctx.write("window-search", &result, Some(result.trace_csv()))?;
    Ok(if result.achieved {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn reproduce_cmd(ctx: &Ctx, name: &str) -> Result<Outcome, Failure> {
    let recipe: Recipe = name.parse().map_err(Failure::from)?;
    let report = reproduce::run(recipe, &ctx.opts())?;
    ctx.write(
        &format!("reproduce {recipe}"),
        &report,
        Some(report.to_csv()),
    )?;
    Ok(if report.pass {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}
