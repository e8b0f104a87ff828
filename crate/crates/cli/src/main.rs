mod agents;
mod cli;
mod config;
mod corpus;
mod error;
mod panel;
mod run;
mod score;

use std::process::ExitCode;

use arena_core::par::Exec;
use clap::Parser;

use cli::{Cli, Command};
use error::Result;

fn exec_for(workers: usize) -> Exec {
    if workers == 1 {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(args) => {
            let m = Exec::with_workers(args.workers, || corpus::generate(args.env, args.seed, &args.out, exec_for(args.workers)))?;
            println!("wrote {} {} files to {}", m.count, m.env, args.out.display());
        }
        Command::Run(args) => {
            let mut cfg = config::resolve(&args.opts, args.agent.as_deref(), "idle")?;
            let interactive = cfg.agent == "interactive";
            let panel = if interactive {
                cfg.workers = 1;
                let p = panel::Panel::bind(&args.bind)?;
                eprintln!("panel endpoint listening on http://{}", p.addr());
                Some(p)
            } else {
                None
            };
            let results = run::run(&cfg, panel.as_ref())?;
            println!("{} episodes written to {}", results.len(), cfg.out.display());
        }
        Command::Serve(args) => {
            let mut cfg = config::resolve(&args.opts, Some("interactive"), "interactive")?;
            cfg.workers = 1;
            let p = panel::Panel::bind(&args.bind)?;
            eprintln!("panel endpoint listening on http://{}", p.addr());
            let results = run::run(&cfg, Some(&p))?;
            println!("{} episodes written to {}", results.len(), cfg.out.display());
        }
        Command::ScoreWeb(args) => {
            let text = score::cmd_score_web(&args)?;
            if args.out.is_none() {
                println!("{text}");
            }
        }
        Command::Report(args) => {
            let text = score::cmd_report(&args)?;
            if args.out.is_none() {
                println!("{text}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // Usage errors are configuration errors (exit 1), not clap's default 2.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("arena: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
