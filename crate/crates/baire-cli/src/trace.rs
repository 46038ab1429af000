//! Line-delimited JSON traces. The first record names the schema version
//! and the invocation; every later record is one event.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

pub struct Trace {
    out: Box<dyn Write>,
}

#[derive(Serialize)]
struct Schema<'a, A: Serialize> {
    record: &'static str,
    version: u32,
    command: &'a str,
    args: &'a A,
}

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    record: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

impl Trace {
    pub fn open(path: Option<&Path>) -> io::Result<Trace> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Trace { out })
    }

    pub fn schema<A: Serialize>(&mut self, command: &str, args: &A) -> io::Result<()> {
        self.line(&Schema {
            record: "schema",
            version: SCHEMA_VERSION,
            command,
            args,
        })
    }

    pub fn emit<T: Serialize>(&mut self, record: &str, body: &T) -> io::Result<()> {
        self.line(&Tagged { record, body })
    }

    fn line<T: Serialize>(&mut self, v: &T) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, v)?;
        self.out.write_all(b"\n")
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}
