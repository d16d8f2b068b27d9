use clap::Parser;
use dfvs_cli::commands::{
    self, CompressArgs, DfasvArgs, GenArgs, ImpcutsArgs, SolveArgs, VerifyArgs,
};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dfvs",
    version,
    about = "Exact solver for directed feedback vertex and arc sets"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Subcommand)]
enum Cmd {
    /// Find a feedback vertex set within a budget
    Solve(SolveArgs),
    /// Find a feedback arc set guided by a feedback vertex set hint
    #[command(name = "dfas-v")]
    DfasV(DfasvArgs),
    /// Shrink a feedback vertex set of size k+1 to size k
    Compress(CompressArgs),
    /// List all important cuts between two vertex sets within a budget
    Impcuts(ImpcutsArgs),
    /// Generate benchmark instances
    Gen(GenArgs),
    /// Check a witness file against a graph
    Verify(VerifyArgs),
    /// Run the built-in differential test battery
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code: u8 = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.cmd {
        Cmd::Solve(args) => commands::cmd_solve(args),
        Cmd::DfasV(args) => commands::cmd_dfasv(args),
        Cmd::Compress(args) => commands::cmd_compress(args),
        Cmd::Impcuts(args) => commands::cmd_impcuts(args),
        Cmd::Gen(args) => commands::cmd_gen(args),
        Cmd::Verify(args) => commands::cmd_verify(args),
        Cmd::Selftest => commands::cmd_selftest(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
