// SPDX-License-Identifier: Apache-2.0
use std::process::ExitCode;

use agm::cli::{main_with, Cli};
use clap::Parser;

fn main() -> ExitCode {
    ExitCode::from(main_with(Cli::parse()) as u8)
}
