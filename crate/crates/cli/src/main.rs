// SPDX-License-Identifier: MIT OR Apache-2.0

use clap::Parser;

fn main() -> anyhow::Result<()> {
    apts_cli::app::main_with(apts_cli::app::Cli::parse())
}
