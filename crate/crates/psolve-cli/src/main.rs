use clap::Parser;
use psolve_cli::{
    emit_report, fixture_lines, parse_point, run_pipeline, NumericWindow, PipelineConfig,
    ReportFormat, FIXTURES,
};

/// Exact integrating factors R = e^(r0) * prod p_i^(c_i) for first-order
/// ODEs dy/dx = M(x,y)/N(x,y) with polynomial M and N.
#[derive(Parser, Debug)]
#[command(name = "psolve", version, about)]
struct Cli {
    /// ODE to solve, e.g. "dy/dx = (3*x^2*y^2 + x^3 + 1) / (4*(x+1)*(x^2-x+1)*y)".
    #[arg(long, required_unless_present = "fixtures", conflicts_with = "fixtures")]
    ode: Option<String>,

    /// Solve the bundled fixture corpus instead of a single ODE.
    #[arg(long)]
    fixtures: bool,

    /// Maximum total degree for the Darboux polynomial search.
    #[arg(long, default_value_t = psolve_cli::DEFAULT_DEGREE_BOUND)]
    degree_bound: u32,

    /// Maximum total degree of the numerator of r0 in the Liouvillian branch.
    #[arg(long, default_value_t = psolve_cli::DEFAULT_NUM_DEGREE_BOUND)]
    num_degree_bound: u32,

    /// Maximum multiplicity of each Darboux factor in r0's denominator.
    #[arg(long, default_value_t = psolve_cli::DEFAULT_MULT_BOUND)]
    mult_bound: u32,

    /// Extra Darboux polynomial candidate; certified before use. Repeatable.
    #[arg(long = "hint")]
    hints: Vec<String>,

    /// Run the Liouvillian branch even when the elementary branch succeeds.
    #[arg(long)]
    force_liouvillian: bool,

    /// Run the numeric drift cross-check along an RK4 trajectory.
    #[arg(long, requires = "from", requires = "to")]
    numeric: bool,

    /// Start point "x,y" for the numeric check (rationals or decimals).
    #[arg(long)]
    from: Option<String>,

    /// Final x for the numeric check.
    #[arg(long)]
    to: Option<String>,

    /// RK4 step for the numeric check.
    #[arg(long, default_value = "1/1000")]
    step: String,

    /// Emit the machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = Cli::parse();
    let format = if cli.json { ReportFormat::Json } else { ReportFormat::Text };

    let numeric = if cli.numeric {
        let Some((x_start, y_start)) = cli.from.as_deref().and_then(parse_point) else {
            eprintln!("error: --from must be \"x,y\" with rational or decimal parts");
            std::process::exit(2);
        };
        let Some(x_end) = cli.to.as_deref().and_then(psolve::arith::parse_rational) else {
            eprintln!("error: --to must be a rational or decimal number");
            std::process::exit(2);
        };
        let Some(step) = psolve::arith::parse_rational(&cli.step) else {
            eprintln!("error: --step must be a rational or decimal number");
            std::process::exit(2);
        };
        Some(NumericWindow { x_start, y_start, x_end, step })
    } else {
        None
    };

    let base = PipelineConfig {
        ode_text: String::new(),
        degree_bound: cli.degree_bound,
        num_degree_bound: cli.num_degree_bound,
        mult_bound: cli.mult_bound,
        hints: cli.hints.clone(),
        force_liouvillian: cli.force_liouvillian,
        numeric,
    };

    if cli.fixtures {
        let mut all_found = true;
        let mut json_reports = Vec::new();
        for ode in fixture_lines(FIXTURES) {
            let cfg = PipelineConfig { ode_text: ode.clone(), ..base.clone() };
            match run_pipeline(&cfg) {
                Ok(report) => {
                    all_found &= report.found();
                    match format {
                        ReportFormat::Text => {
                            println!("{}", emit_report(&report, ReportFormat::Text));
                        }
                        ReportFormat::Json => json_reports.push(report),
                    }
                }
                Err(e) => {
                    eprintln!("error in fixture '{ode}': {e}");
                    std::process::exit(2);
                }
            }
        }
        if format == ReportFormat::Json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json_reports).expect("reports serialize")
            );
        }
        std::process::exit(if all_found { 0 } else { 1 });
    }

    let cfg = PipelineConfig {
        ode_text: cli.ode.expect("clap enforces --ode"),
        ..base
    };
    match run_pipeline(&cfg) {
        Ok(report) => {
            print!("{}", emit_report(&report, format));
            if format == ReportFormat::Json {
                println!();
            }
            std::process::exit(if report.found() { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
