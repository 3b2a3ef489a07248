// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

// Driving a computation from a JSON config, as the binary does.

use dephaser::cli::{config_echo, parse_config, run, Format};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let text = r#"{
        "command": "witness",
        "bath": {"type": "synthetic_linear", "gamma": 0.3, "frequency": 1.0},
        "time": {"t_start": 0.0, "t_end": 1.0, "n_points": 5},
        "witness": {"n": 3}
    }"#;
    let config = parse_config(text)?;
    let csv = run(&config)?.render(Format::Csv);
    print!("{csv}");
    assert_eq!(parse_config(config_echo(&csv).ok_or("no echo")?)?, config);

    match parse_config(r#"{"command": "eta", "time": {"t_start": 0.0, "t_end": -1.0, "n_points": 3}}"#) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => return Err("bad config accepted".into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
