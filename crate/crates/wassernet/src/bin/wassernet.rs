//! Thin command-line front end over the library: every subcommand reads the
//! JSON formats from `wassernet::json` and prints results to stdout.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use wassernet::json::{
    self, group_to_dto, load_group, load_map, load_measure_on, load_pair, load_space, map_to_dto,
    write_pretty, NetDto, QuadrupleDto,
};
use wassernet::{
    almost_inverse_check, best_approx_search_with, build_p2_net_capped, certify,
    certify_equivariant, certify_relative_equivariant, derive_subset_approx,
    gh_distance_bruteforce_capped, gh_upper_bound, glue_pair_approx, lift_approximation,
    lift_equivariant, pushforward_group, run_equivariant_scenario, run_scenario, wp_distance,
    EquivariantApprox, PointMap, RelativeEquivariantApprox, ScenarioSpec, SearchMode,
};

#[derive(Parser)]
#[command(
    name = "wassernet",
    about = "Finite metric spaces, exact optimal transport, and certified GH approximations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MapArgs {
    /// Map file: a bare index array or an object with inline spaces.
    #[arg(long = "f", value_name = "FILE")]
    f: PathBuf,
    /// Source space (required when the map file is a bare array).
    #[arg(long)]
    x: Option<PathBuf>,
    /// Target space (required when the map file is a bare array).
    #[arg(long)]
    y: Option<PathBuf>,
}

impl MapArgs {
    fn load(&self) -> Result<PointMap> {
        let source = self.x.as_ref().map(|p| load_space(p)).transpose()?;
        let target = self.y.as_ref().map(|p| load_space(p)).transpose()?;
        Ok(load_map(&self.f, source, target)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Wasserstein distance between two measures on one space.
    W2 {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        nu: PathBuf,
        /// Exponent of the Wasserstein metric.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Also write the optimal plan as CSV to this file.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// GH distance (exact brute force) or an upper bound from map search.
    Gh {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        /// Exact correspondence enumeration (the default).
        #[arg(long, conflicts_with = "heuristic")]
        exact: bool,
        /// Upper bound from heuristic map search instead.
        #[arg(long)]
        heuristic: bool,
        /// Point cap for the exact mode.
        #[arg(long, default_value_t = wassernet::approx::DEFAULT_GH_CAP)]
        cap: usize,
    },
    /// Measure a map against a claimed epsilon.
    Certify {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        eps: f64,
    },
    /// Derive the subset-level map of a pair approximation (3-epsilon).
    PairDerive {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        pairx: PathBuf,
        #[arg(long)]
        pairy: PathBuf,
        #[arg(long)]
        eps: f64,
    },
    /// Glue a total-space map and a subset map (2-epsilon distortion).
    PairGlue {
        #[command(flatten)]
        map: MapArgs,
        /// Subset map file (bare array allowed; subset spaces are induced).
        #[arg(long = "g")]
        g: PathBuf,
        #[arg(long)]
        pairx: PathBuf,
        #[arg(long)]
        pairy: PathBuf,
        #[arg(long)]
        eps: f64,
    },
    /// Build the Wasserstein net of a space at resolution m.
    P2net {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = wassernet::net::DEFAULT_NET_CAP)]
        cap: usize,
    },
    /// Lift a certified map to the nets with its epsilon-tilde certificate.
    Lift {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = wassernet::net::DEFAULT_NET_CAP)]
        cap: usize,
        /// Write the lifted map and certificate as JSON here (a stdout
        /// summary is printed either way).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify an (optionally relative) equivariant quadruple.
    EquivCertify {
        /// Quadruple file: { f, fprime?, theta, psi, eps }.
        #[arg(long)]
        quad: PathBuf,
        #[arg(long)]
        gx: PathBuf,
        #[arg(long)]
        gy: PathBuf,
        /// Pair files for the relative conditions (both or neither).
        #[arg(long)]
        pairx: Option<PathBuf>,
        #[arg(long)]
        pairy: Option<PathBuf>,
    },
    /// Lift an equivariant approximation to the nets.
    EquivLift {
        #[arg(long)]
        quad: PathBuf,
        #[arg(long)]
        gx: PathBuf,
        #[arg(long)]
        gy: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = wassernet::net::DEFAULT_NET_CAP)]
        cap: usize,
    },
    /// Push a group of base isometries forward to net atom permutations.
    PushforwardGroup {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = wassernet::net::DEFAULT_NET_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a convergence scenario and emit its CSV (and JSON) report.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn load_quadruple(
    quad: &PathBuf,
    gx: &PathBuf,
    gy: &PathBuf,
) -> Result<(EquivariantApprox, Option<Vec<usize>>)> {
    let text =
        std::fs::read_to_string(quad).with_context(|| format!("reading {}", quad.display()))?;
    let dto: QuadrupleDto =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", quad.display()))?;
    let group_x = load_group(gx)?;
    let group_y = load_group(gy)?;
    let theta = QuadrupleDto::table(&dto.theta, group_x.order(), "theta")?;
    let psi = QuadrupleDto::table(&dto.psi, group_y.order(), "psi")?;
    let f = PointMap::new(group_x.space().clone(), group_y.space().clone(), dto.f)?;
    let e = EquivariantApprox::new(f, group_x, group_y, theta, psi, dto.eps)?;
    Ok((e, dto.fprime))
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::W2 {
            space,
            mu,
            nu,
            p,
            plan,
        } => {
            let space = load_space(&space)?;
            let mu = load_measure_on(&mu, &space)?;
            let nu = load_measure_on(&nu, &space)?;
            let (value, coupling) = wp_distance(&mu, &nu, p)?;
            println!("{value}");
            if let Some(path) = plan {
                let n = space.n();
                let mut csv = String::from("i,j,mass\n");
                for i in 0..n {
                    for j in 0..n {
                        let mass = coupling.mass(i, j);
                        if mass > 0.0 {
                            csv.push_str(&format!("{i},{j},{mass}\n"));
                        }
                    }
                }
                std::fs::write(&path, csv)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Gh {
            x,
            y,
            heuristic,
            cap,
            ..
        } => {
            let x = load_space(&x)?;
            let y = load_space(&y)?;
            if heuristic {
                let (f, cert) = best_approx_search_with(&x, &y, SearchMode::Heuristic, 0)?;
                let upper = gh_upper_bound(&f);
                println!("upper_bound {upper}");
                println!("map_epsilon {}", cert.measured());
            } else {
                let d = gh_distance_bruteforce_capped(&x, &y, cap)?;
                println!("{d}");
            }
        }
        Command::Certify { map, eps } => {
            let f = map.load()?;
            let cert = certify(&f, eps);
            println!("distortion {}", cert.distortion);
            println!("defect {}", cert.defect);
            println!("valid {}", cert.valid);
            if !cert.valid {
                std::process::exit(1);
            }
        }
        Command::PairDerive {
            map,
            pairx,
            pairy,
            eps,
        } => {
            let f = map.load()?;
            let pair_x = load_pair(&pairx)?;
            let pair_y = load_pair(&pairy)?;
            let (g, cert) = derive_subset_approx(&f, &pair_x, &pair_y, eps)?;
            println!("g {}", serde_json::to_string(g.image())?);
            println!("distortion {}", cert.distortion);
            println!("defect {}", cert.defect);
            println!("epsilon_claimed {}", cert.epsilon_claimed);
            println!("valid {}", cert.valid);
        }
        Command::PairGlue {
            map,
            g,
            pairx,
            pairy,
            eps,
        } => {
            let f = map.load()?;
            let pair_x = load_pair(&pairx)?;
            let pair_y = load_pair(&pairy)?;
            let g = load_map(
                &g,
                Some(pair_x.subspace().clone()),
                Some(pair_y.subspace().clone()),
            )?;
            let (xi, cert) = glue_pair_approx(&f, &g, &pair_x, &pair_y, eps)?;
            println!("xi {}", serde_json::to_string(xi.image())?);
            println!("distortion {}", cert.distortion);
            println!("defect {}", cert.defect);
            println!("epsilon_claimed {}", cert.epsilon_claimed);
            println!("valid {}", cert.valid);
        }
        Command::P2net { space, m, out, cap } => {
            let space = load_space(&space)?;
            let net = build_p2_net_capped(&space, m, cap)?;
            write_pretty(&out, &NetDto::from_net(&net))?;
            println!("atoms {}", net.len());
        }
        Command::Lift {
            map,
            eps,
            m,
            cap,
            out,
        } => {
            let f = map.load()?;
            let net_x = build_p2_net_capped(f.source(), m, cap)?;
            let net_y = build_p2_net_capped(f.target(), m, cap)?;
            let lift = lift_approximation(&f, eps, &net_x, &net_y)?;
            println!("epsilon_tilde {}", lift.epsilon_tilde);
            println!("distortion {}", lift.certificate.distortion);
            println!("defect {}", lift.certificate.defect);
            println!("valid {}", lift.certificate.valid);
            if let Some(path) = out {
                #[derive(serde::Serialize)]
                struct LiftOut {
                    map: json::MapDto,
                    epsilon_tilde: f64,
                    distortion: f64,
                    defect: f64,
                    valid: bool,
                }
                write_pretty(
                    &path,
                    &LiftOut {
                        map: map_to_dto(&lift.map),
                        epsilon_tilde: lift.epsilon_tilde,
                        distortion: lift.certificate.distortion,
                        defect: lift.certificate.defect,
                        valid: lift.certificate.valid,
                    },
                )?;
            }
        }
        Command::EquivCertify {
            quad,
            gx,
            gy,
            pairx,
            pairy,
        } => {
            let (e, fprime) = load_quadruple(&quad, &gx, &gy)?;
            match (pairx, pairy) {
                (Some(px), Some(py)) => {
                    let pair_x = load_pair(&px)?;
                    let pair_y = load_pair(&py)?;
                    let image = fprime.ok_or_else(|| {
                        anyhow::anyhow!("relative certification needs \"fprime\" in the quadruple")
                    })?;
                    let f_prime = PointMap::new(
                        pair_x.subspace().clone(),
                        pair_y.subspace().clone(),
                        image,
                    )?;
                    let r = RelativeEquivariantApprox {
                        base: e,
                        pair_x,
                        pair_y,
                        f_prime,
                    };
                    let report = certify_relative_equivariant(&r)?;
                    println!("dev_theta {}", report.base.dev_theta);
                    println!("dev_psi {}", report.base.dev_psi);
                    println!("fprime_distortion {}", report.f_prime_certificate.distortion);
                    println!("fprime_defect {}", report.f_prime_certificate.defect);
                    println!("closeness {}", report.closeness);
                    println!("valid {}", report.valid);
                    if !report.valid {
                        std::process::exit(1);
                    }
                }
                (None, None) => {
                    let report = certify_equivariant(&e);
                    let (ai_theta, ai_psi) = almost_inverse_check(&e);
                    println!("distortion {}", report.f_certificate.distortion);
                    println!("defect {}", report.f_certificate.defect);
                    println!("dev_theta {}", report.dev_theta);
                    println!("dev_psi {}", report.dev_psi);
                    println!("almost_inverse_theta {ai_theta}");
                    println!("almost_inverse_psi {ai_psi}");
                    println!("valid {}", report.valid);
                    if !report.valid {
                        std::process::exit(1);
                    }
                }
                _ => bail!("pass both --pairx and --pairy, or neither"),
            }
        }
        Command::EquivLift {
            quad,
            gx,
            gy,
            m,
            cap,
        } => {
            let (e, _) = load_quadruple(&quad, &gx, &gy)?;
            let net_x = build_p2_net_capped(e.f.source(), m, cap)?;
            let net_y = build_p2_net_capped(e.f.target(), m, cap)?;
            let (lifted, report) = lift_equivariant(&e, &net_x, &net_y)?;
            println!("epsilon_tilde {}", report.epsilon_tilde);
            println!("max_commutation {}", report.max_commutation);
            println!("valid {}", report.valid);
            let lifted_report = certify_equivariant(&lifted);
            println!("lifted_dev_theta {}", lifted_report.dev_theta);
            println!("lifted_dev_psi {}", lifted_report.dev_psi);
        }
        Command::PushforwardGroup { group, m, cap, out } => {
            let group = load_group(&group)?;
            let net = build_p2_net_capped(group.space(), m, cap)?;
            let lifted = pushforward_group(&group, &net)?;
            println!("order {}", lifted.order());
            println!("atoms {}", net.len());
            if let Some(path) = out {
                write_pretty(&path, &group_to_dto(&lifted))?;
            }
        }
        Command::Experiment { spec, out, json } => {
            let text = std::fs::read_to_string(&spec)
                .with_context(|| format!("reading {}", spec.display()))?;
            let spec: ScenarioSpec =
                serde_json::from_str(&text).with_context(|| "parsing scenario spec")?;
            let report = if spec.group.is_some() {
                run_equivariant_scenario(&spec)?
            } else {
                run_scenario(&spec)?
            };
            std::fs::write(&out, report.to_csv())
                .with_context(|| format!("writing {}", out.display()))?;
            if let Some(path) = json {
                write_pretty(&path, &report)?;
            }
            println!("rows {}", report.rows.len());
            println!("co_decay {}", report.co_decay);
            println!("contracts_hold {}", report.contracts_hold);
            if !report.contracts_hold {
                std::process::exit(1);
            }
        }
    }
    Ok(())
}
