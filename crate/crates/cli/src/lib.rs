//! JSON batch front end: one request in, one report out.
//!
//! [`execute`] never panics on bad input. Failures are reported through the
//! exit code and a one-line diagnostic that names the offending JSON path.

use std::fmt;

use cechtower_core::json::Node;
use cechtower_core::{Error, ErrorKind};
use serde_json::Value;

mod commands;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Number of random re-lifts or sections examined by `--verify`.
pub const VERIFY_TRIALS: usize = 20;
/// Seed of the generator used by `--verify`, fixed so output is reproducible.
pub const VERIFY_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Cohomology,
    Connecting,
    Les,
    Tower,
    Spectral,
    GerbeLift,
    Validate,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Cohomology,
        Command::Connecting,
        Command::Les,
        Command::Tower,
        Command::Spectral,
        Command::GerbeLift,
        Command::Validate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Connecting => "connecting",
            Command::Les => "les",
            Command::Tower => "tower",
            Command::Spectral => "spectral",
            Command::GerbeLift => "gerbe-lift",
            Command::Validate => "validate",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub max_degree: Option<usize>,
    pub budget: Option<u128>,
    pub verify: bool,
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    pub payload: Value,
    pub options: Options,
}

impl Request {
    /// Reads either a bare payload or an envelope
    /// `{"command", "payload", "options"}`. Options given explicitly take
    /// precedence over those in the envelope.
    pub fn from_document(command: Command, document: Value, options: Options) -> Result<Request, Error> {
        let root = Node::root(&document);
        let is_envelope = document.as_object().is_some_and(|m| m.contains_key("payload"));
        if !is_envelope {
            return Ok(Request {
                command,
                payload: document,
                options,
            });
        }
        if let Some(c) = root.opt("command")? {
            let name = c.str()?;
            match Command::from_name(name) {
                Some(found) if found == command || command == Command::Validate => {}
                Some(_) => return Err(c.error(format!("envelope command \"{name}\" does not match \"{command}\""))),
                None => return Err(c.error(format!("unknown command \"{name}\""))),
            }
        }
        let mut merged = options;
        if let Some(o) = root.opt("options")? {
            if merged.max_degree.is_none() {
                merged.max_degree = o.opt("max_degree")?.map(|n| n.usize()).transpose()?;
            }
            if merged.budget.is_none() {
                merged.budget = o
                    .opt("budget")?
                    .map(|n| n.usize().map(|b| b as u128))
                    .transpose()?;
            }
            if !merged.verify {
                merged.verify = o.opt("verify")?.map(|n| n.bool()).transpose()?.unwrap_or(false);
            }
        }
        let payload = match command {
            // validate keeps the envelope so the inner command can be read
            Command::Validate => document.clone(),
            _ => root.get("payload")?.value().clone(),
        };
        Ok(Request {
            command,
            payload,
            options: merged,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Response {
    /// The report, present on success and on verification failures.
    pub document: Option<Value>,
    pub diagnostic: Option<String>,
    pub exit_code: i32,
}

impl Response {
    fn ok(document: Value) -> Self {
        Response {
            document: Some(document),
            diagnostic: None,
            exit_code: EXIT_OK,
        }
    }

    fn failed(error: &Error) -> Self {
        Response {
            document: None,
            diagnostic: Some(error.to_string()),
            exit_code: exit_code(error),
        }
    }

    /// The document as pretty-printed JSON with a trailing newline.
    pub fn render(&self) -> Option<String> {
        self.document
            .as_ref()
            .map(|d| serde_json::to_string_pretty(d).expect("values serialize") + "\n")
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error.kind() {
        ErrorKind::Invalid => EXIT_INVALID,
        ErrorKind::Verification => EXIT_VERIFICATION,
        ErrorKind::Budget => EXIT_BUDGET,
    }
}

pub fn execute(request: &Request) -> Response {
    match commands::run(request) {
        Ok(outcome) if outcome.verified => Response::ok(outcome.document),
        Ok(outcome) => Response {
            document: Some(outcome.document),
            diagnostic: Some(format!("{}: verification failed", request.command)),
            exit_code: EXIT_VERIFICATION,
        },
        Err(e) => Response::failed(&e),
    }
}

/// Parses `text` as JSON and executes it.
pub fn execute_text(command: Command, text: &str, options: Options) -> Response {
    let document: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => {
            return Response::failed(&Error::Schema {
                path: "$".into(),
                message: format!("malformed JSON: {e}"),
            })
        }
    };
    match Request::from_document(command, document, options) {
        Ok(r) => execute(&r),
        Err(e) => Response::failed(&e),
    }
}
