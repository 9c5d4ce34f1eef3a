use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use isochk::flow::FlowOptions;
use isochk::roots::DEFAULT_CLUSTER_TOL;

#[derive(Parser, Debug)]
#[command(name = "isochk", version, about = "Isochronicity checks for complex polynomial Hamiltonian centers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full report: normal form, points at infinity, necessary conditions,
    /// critical points, periods and escapes.
    Analyze {
        #[command(flatten)]
        ham: HamArg,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        infinity: OrderArg,
        /// Starting points for the iV escape experiment (0 disables it).
        #[arg(long, default_value_t = 4)]
        escape_starts: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Period samples T(h) along rays of the level parameter.
    Period {
        #[command(flatten)]
        ham: HamArg,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        out: Output,
        /// Write h_re,h_im,T_re,T_im,drift rows to this file.
        #[arg(long, value_name = "OUT")]
        csv: Option<String>,
    },
    /// Points at infinity, Puiseux branches and their dynamics.
    Infinity {
        #[command(flatten)]
        ham: HamArg,
        #[command(flatten)]
        infinity: OrderArg,
        #[command(flatten)]
        out: Output,
    },
    /// The multiplicity condition at infinity and the parity flag.
    Necessary {
        #[command(flatten)]
        ham: HamArg,
        #[command(flatten)]
        out: Output,
    },
    /// Jacobian determinant, induced Hamiltonian and common zeros of a pair.
    Jacobian {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[command(flatten)]
        out: Output,
    },
    /// Critical points of H and which of them lie on H = 0.
    Singular {
        #[command(flatten)]
        ham: HamArg,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
pub struct HamArg {
    /// Polynomial in x and y with exact rational (or Gaussian rational) coefficients.
    #[arg(short = 'H', long = "hamiltonian")]
    pub hamiltonian: String,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// Samples per ray.
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub h_min: f64,
    #[arg(long, default_value_t = 1e-1)]
    pub h_max: f64,
    /// Ray angle of h in degrees; repeatable. Defaults to 0 and 60.
    #[arg(long = "ray", allow_negative_numbers = true)]
    pub rays: Vec<f64>,
    /// Relative spread of T above which the center is not isochronous.
    #[arg(long, default_value_t = 1e-6)]
    pub iso_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
}

impl Sampling {
    pub fn rays(&self) -> Vec<f64> {
        if self.rays.is_empty() {
            vec![0.0, 60.0]
        } else {
            self.rays.clone()
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OrderArg {
    /// Puiseux truncation order (raised automatically up to 64).
    #[arg(long, default_value_t = isochk::infinity::DEFAULT_ORDER)]
    pub order: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the JSON report to this file.
    #[arg(long, value_name = "OUT")]
    pub json: Option<String>,
    /// Format of standard output.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
}

/// Everything that determines a run, echoed into every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub hamiltonian: Option<String>,
    pub f: Option<String>,
    pub g: Option<String>,
    pub samples: Option<usize>,
    pub h_min: Option<f64>,
    pub h_max: Option<f64>,
    pub rays: Option<Vec<f64>>,
    pub order: Option<usize>,
    pub iso_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub cluster_tol: f64,
    pub escape_starts: Option<usize>,
    pub json: Option<String>,
    pub csv: Option<String>,
    pub format: Format,
    pub threads: Option<String>,
}

impl RunConfig {
    pub fn new(command: &'static str, out: &Output) -> Self {
        Self {
            command,
            hamiltonian: None,
            f: None,
            g: None,
            samples: None,
            h_min: None,
            h_max: None,
            rays: None,
            order: None,
            iso_tol: None,
            rel_tol: None,
            abs_tol: None,
            cluster_tol: DEFAULT_CLUSTER_TOL,
            escape_starts: None,
            json: out.json.clone(),
            csv: None,
            format: out.format,
            threads: std::env::var("ISOCHK_THREADS").ok(),
        }
    }

    pub fn with_sampling(mut self, s: &Sampling) -> Self {
        self.samples = Some(s.samples);
        self.h_min = Some(s.h_min);
        self.h_max = Some(s.h_max);
        self.rays = Some(s.rays());
        self.iso_tol = Some(s.iso_tol);
        self.rel_tol = Some(s.rel_tol);
        self.abs_tol = Some(s.abs_tol);
        self
    }

    /// Checks the invariants of a run: positive tolerances and a usable
    /// sample range.
    pub fn validate(&self) -> Result<(), String> {
        let positive = [("iso-tol", self.iso_tol), ("rel-tol", self.rel_tol), ("abs-tol", self.abs_tol), ("h-min", self.h_min), ("h-max", self.h_max)];
        for (name, v) in positive {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(format!("--{name} must be positive"));
                }
            }
        }
        if let (Some(a), Some(b)) = (self.h_min, self.h_max) {
            if a > b {
                return Err("--h-min exceeds --h-max".into());
            }
        }
        if let Some(n) = self.samples {
            if n < 2 {
                return Err("--samples must be at least 2".into());
            }
        }
        if let Some(rays) = &self.rays {
            if rays.iter().any(|r| !r.is_finite()) {
                return Err("--ray must be finite".into());
            }
        }
        if let Some(m) = self.order {
            if m == 0 || m > isochk::infinity::MAX_ORDER {
                return Err(format!("--order must lie in 1..={}", isochk::infinity::MAX_ORDER));
            }
        }
        Ok(())
    }

    pub fn flow_options(&self) -> FlowOptions {
        let d = FlowOptions::default();
        FlowOptions { rel_tol: self.rel_tol.unwrap_or(d.rel_tol), abs_tol: self.abs_tol.unwrap_or(d.abs_tol), ..d }
    }
}
