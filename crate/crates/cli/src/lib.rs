//! Script front end for `toricmap-core`: the `.tm` language, the command
//! runner and its JSON/text output.

pub mod dsl;
pub mod output;
pub mod session;

pub use dsl::{parse, Script, ScriptError};
pub use output::{render_text, to_json, OutputRecord, Payload};
pub use session::{compile, Deadline, Program};

/// Parse, compile and run a script.
pub fn run_script(text: &str, intr: &dyn toricmap_core::Interrupt) -> Result<Vec<OutputRecord>, ScriptError> {
    let script = parse(text)?;
    let mut program = compile(&script)?;
    Ok(program.run(intr))
}
