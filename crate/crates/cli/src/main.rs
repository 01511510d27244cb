use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use aoaforge::aoa::Fault;
use aoaforge::schedule::table_of;
use aoaforge::{
    build_aon, convert, emit_table, generate_random_table, parse_schedule_table, render_aoa_dot, render_aon_dot,
    schedule, AoaDocument, AugmentPolicy, ConvertOptions, ScheduleTable,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Convert activity-on-node schedule tables into activity-on-arc networks.
#[derive(Debug, Parser)]
#[command(name = "aoaforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a table into an event network (JSON, DOT or the table with dummies).
    Convert {
        #[command(flatten)]
        io: InputOutput,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Include network statistics.
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        table: TableOptions,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Validate a table and certify that it converts.
    Check {
        #[command(flatten)]
        io: InputOutput,
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        table: TableOptions,
    },
    /// Print the topological level of every activity.
    Levels {
        #[command(flatten)]
        io: InputOutput,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        table: TableOptions,
    },
    /// Early and late times, float and the critical path.
    Cpm {
        #[command(flatten)]
        io: InputOutput,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        table: TableOptions,
    },
    /// Generate a random schedule table.
    Gen {
        #[arg(long, default_value_t = 20)]
        nodes: usize,
        #[arg(long, default_value_t = 0.1)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw the event network, or the precedence graph with --aon, as DOT.
    Render {
        #[command(flatten)]
        io: InputOutput,
        #[arg(long)]
        aon: bool,
        #[command(flatten)]
        table: TableOptions,
    },
}

#[derive(Debug, Args)]
struct InputOutput {
    /// Input table; `-` or nothing reads standard input.
    #[arg(value_name = "INPUT", conflicts_with = "input")]
    path: Option<PathBuf>,
    #[arg(short, long, value_name = "INPUT")]
    input: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableOptions {
    /// Require explicit α and ω rows instead of adding them.
    #[arg(long)]
    strict_alpha_omega: bool,
}

impl TableOptions {
    fn policy(&self) -> AugmentPolicy {
        if self.strict_alpha_omega {
            AugmentPolicy::Strict
        } else {
            AugmentPolicy::Auto
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Csv,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: 1, message: message.to_string() }
    }
}

type Outcome = Result<(), Failure>;

impl InputOutput {
    fn read_table(&self) -> Result<ScheduleTable, Failure> {
        let (name, text) = match self.path.as_ref().or(self.input.as_ref()) {
            Some(p) if p.as_os_str() != "-" => {
                let text = fs::read_to_string(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
                (p.display().to_string(), text)
            }
            _ => {
                let mut text = String::new();
                io::stdin().read_to_string(&mut text).map_err(|e| Failure::input(format!("stdin: {e}")))?;
                ("<stdin>".to_owned(), text)
            }
        };
        parse_schedule_table(&text).map_err(|e| Failure::input(format!("{name}: {e}")))
    }

    fn write(&self, text: &str) -> Outcome {
        write_out(self.output.as_ref(), text)
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Outcome {
    let result = match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(|e| format!("stdout: {e}")),
    };
    result.map_err(Failure::input)
}

fn run_convert(table: &ScheduleTable, policy: AugmentPolicy, fault: bool) -> Result<aoaforge::Conversion, Failure> {
    let options = ConvertOptions { policy, fault: fault.then_some(Fault::DetachSource) };
    convert(table, &options).map_err(|e| Failure { code: e.exit_code() as u8, message: e.to_string() })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Convert { io, format, stats, table, inject_fault } => {
            let conv = run_convert(&io.read_table()?, table.policy(), inject_fault)?;
            let text = match format {
                Format::Json => {
                    let mut doc = AoaDocument::new(&conv.aoa);
                    if stats {
                        doc = doc.with_stats(conv.stats);
                    }
                    doc.to_json()
                }
                Format::Dot => {
                    let mut dot = render_aoa_dot(&conv.aoa);
                    if stats {
                        dot.push_str(&format!("// {}\n", conv.stats));
                    }
                    dot
                }
                Format::Csv => {
                    let mut csv = emit_table(&table_of(&conv.elimination.graph));
                    if stats {
                        csv.push_str(&format!("# {}\n", conv.stats));
                    }
                    csv
                }
            };
            io.write(&text)
        }
        Command::Check { io, stats, table } => {
            let t = io.read_table()?;
            let conv = run_convert(&t, table.policy(), false)?;
            let mut text = format!(
                "ok: {} activities, {} precedences, {} dummies\n",
                conv.aon.node_count(),
                conv.aon.arc_count(),
                conv.stats.dummy_arc_count
            );
            if stats {
                text.push_str(&format!("{}\n", conv.stats));
            }
            io.write(&text)
        }
        Command::Levels { io, format, table } => {
            let aon = build_aon(&io.read_table()?, table.policy()).map_err(Failure::input)?;
            let groups = aon.topological_levels().groups();
            let text = match format {
                Format::Json => {
                    let rows: Vec<_> = groups.iter().map(|(l, a)| json!({"level": l, "activities": a})).collect();
                    format!("{}\n", serde_json::to_string_pretty(&rows).expect("levels serialize"))
                }
                Format::Csv => {
                    let mut out = String::from("level,activities\n");
                    for (level, codes) in &groups {
                        let names: Vec<&str> = codes.iter().map(|c| c.as_str()).collect();
                        out.push_str(&format!("{level},{}\n", names.join(";")));
                    }
                    out
                }
                Format::Dot => return Err(Failure::input("levels supports --format csv or json")),
            };
            io.write(&text)
        }
        Command::Cpm { io, format, table } => {
            let conv = run_convert(&io.read_table()?, table.policy(), false)?;
            let cpm = schedule(&conv.aoa).map_err(|e| Failure { code: 2, message: e.to_string() })?;
            let text = match format {
                Format::Json => AoaDocument::new(&conv.aoa).with_stats(conv.stats).with_cpm(cpm).to_json(),
                Format::Csv => {
                    let path: Vec<String> = cpm.critical_activities(&conv.aoa).iter().map(|c| c.to_string()).collect();
                    let mut out = format!("# makespan {}, critical path {}\n", cpm.makespan, path.join(" "));
                    out.push_str("code,kind,duration,early_start,early_finish,late_start,late_finish,total_float\n");
                    let mut arcs: Vec<_> = conv.aoa.arcs.iter().collect();
                    arcs.sort_by(|a, b| a.label.cmp(&b.label));
                    for a in arcs {
                        let es = cpm.early[&a.tail];
                        let lf = cpm.late[&a.head];
                        let kind = if a.kind == aoaforge::ArcKind::Dummy { "dummy" } else { "real" };
                        out.push_str(&format!(
                            "{},{kind},{},{es},{},{},{lf},{}\n",
                            a.label,
                            a.duration,
                            es + a.duration,
                            lf - a.duration,
                            cpm.total_float[&a.label]
                        ));
                    }
                    out
                }
                Format::Dot => return Err(Failure::input("cpm supports --format csv or json")),
            };
            io.write(&text)
        }
        Command::Gen { nodes, density, seed, output } => {
            let t = generate_random_table(nodes, density, seed).map_err(Failure::input)?;
            write_out(output.as_ref(), &emit_table(&t))
        }
        Command::Render { io, aon, table } => {
            let t = io.read_table()?;
            let dot = if aon {
                render_aon_dot(&build_aon(&t, table.policy()).map_err(Failure::input)?)
            } else {
                render_aoa_dot(&run_convert(&t, table.policy(), false)?.aoa)
            };
            io.write(&dot)
        }
    }
}

fn report(message: &str) {
    let mut stderr = io::stderr().lock();
    let color = stderr.is_terminal() && std::env::var_os("AOAFORGE_NO_COLOR").is_none();
    let prefix = if color { "\x1b[1;31merror\x1b[0m" } else { "error" };
    let _ = writeln!(stderr, "{prefix}: {message}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            report(&failure.message);
            ExitCode::from(failure.code)
        }
    }
}
