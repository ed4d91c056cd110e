//! `sl2kit <command> --<field> <json> …` or `sl2kit request '<json>'`.
//!
//! Flag values are parsed as JSON and fall back to plain strings, so both
//! `--x '"9/2"'` and `--x 9/2` work. A value `@path` is read from a file.

use clap::{Arg, ArgAction, ArgMatches, Command as App};
use serde_json::{Map, Value};
use sl2kit::cli::{dispatch, dispatch_str, Command, Request, Response, BUDGET_ENV};
use std::io::Read;
use std::process::ExitCode;

fn app() -> App {
    let schemas = format!(
        "Value schemas:
  element  [\"num/den\", …] over 1, γ, γ², … | int | \"9/2\" | \"1/2 + 3γ - γ^2\"
  matrix   [[element, element], [element, element]] (row-major)
  minpoly  [c0, c1, …, 1], monic, irreducible, degree ≤ 4; omitted means Q
  vertex   {{\"n\": int, \"b\": element}}
  point    {{\"z\": [re, im], \"t\": float > 0}}
  group    {{\"minpoly\"?: minpoly, \"generators\": [matrix, …]}}

{BUDGET_ENV} caps the enumeration search space.
Exit codes: 0 ok, 1 usage error, 2 domain error, 3 check failed."
    );
    let mut app = App::new("sl2kit")
        .about("Exact computations for SL(2) over number fields, S-adic trees and hyperbolic space")
        .after_help(schemas)
        .subcommand_required(true)
        .subcommand(
            App::new("request")
                .about("Dispatch a full request document; reads stdin when no argument is given")
                .arg(Arg::new("json").required(false)),
        );
    for c in Command::ALL {
        let mut sub = App::new(c.name()).about(c.schema());
        for f in c.fields() {
            sub = sub.arg(Arg::new(*f).long(*f).value_name("JSON").action(ArgAction::Set));
        }
        app = app.subcommand(sub);
    }
    app
}

fn flag_value(raw: &str) -> Result<Value, String> {
    let text = match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
        None => raw.to_string(),
    };
    Ok(serde_json::from_str(&text).unwrap_or(Value::String(text)))
}

fn build(command: Command, m: &ArgMatches) -> Result<Request, String> {
    let mut payload = Map::new();
    for f in command.fields() {
        if let Some(raw) = m.get_one::<String>(f) {
            payload.insert((*f).to_string(), flag_value(raw)?);
        }
    }
    Ok(Request { command, payload })
}

fn main() -> ExitCode {
    let matches = app().get_matches();
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let response = if name == "request" {
        let mut text = String::new();
        match sub.get_one::<String>("json") {
            Some(s) => text.clone_from(s),
            None => {
                if let Err(e) = std::io::stdin().read_to_string(&mut text) {
                    return finish(Response::usage(format!("stdin: {e}")));
                }
            }
        }
        dispatch_str(&text)
    } else {
        let command = Command::ALL.into_iter().find(|c| c.name() == name).expect("registered subcommand");
        match build(command, sub) {
            Ok(r) => dispatch(&r),
            Err(e) => Response::usage(e),
        }
    };
    finish(response)
}

fn finish(response: Response) -> ExitCode {
    print!("{}", response.to_json_string());
    ExitCode::from(response.exit_code() as u8)
}
