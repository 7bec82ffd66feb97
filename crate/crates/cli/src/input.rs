//! Turning flags and spec files into library values.

use std::fmt;

use hypergeom::hyperseq::{make_sequence, HypergeomSeq};
use hypergeom::parse::{parse_poly, parse_rational, parse_sequence_file, SequenceSpec};
use hypergeom::{Error, Rational};
use num_bigint::BigInt;

use crate::SeqArgs;

#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.name(),
            CliError::Io(_) => "IoError",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// All records named by the flags: the inline triple, or every record of
/// the spec file.
pub fn load_specs(args: &SeqArgs) -> CliResult<Vec<SequenceSpec>> {
    if let Some(path) = &args.spec {
        let text = std::fs::read_to_string(path)?;
        let specs = parse_sequence_file(&text)?;
        if specs.is_empty() {
            return Err(Error::InvalidArgument(format!("{} holds no records", path.display())).into());
        }
        return Ok(specs);
    }
    // clap guarantees both are present without --spec
    let f = parse_poly(args.f.as_deref().unwrap_or_default())?;
    let g = parse_poly(args.g.as_deref().unwrap_or_default())?;
    let u0 = match &args.u0 {
        Some(s) => parse_rational(s)?,
        None => Rational::from_integer(1.into()),
    };
    Ok(vec![SequenceSpec { f, g, u0 }])
}

/// The selected record, not yet validated.
pub fn load_spec(args: &SeqArgs) -> CliResult<SequenceSpec> {
    let mut specs = load_specs(args)?;
    if args.record >= specs.len() {
        return Err(Error::InvalidArgument(format!(
            "record {} requested but the file holds {}",
            args.record,
            specs.len()
        ))
        .into());
    }
    Ok(specs.swap_remove(args.record))
}

pub fn load_seq(args: &SeqArgs) -> CliResult<HypergeomSeq> {
    let s = load_spec(args)?;
    Ok(make_sequence(s.f, s.g, s.u0)?)
}

pub fn parse_int(text: &str) -> CliResult<BigInt> {
    let r = parse_rational(text)?;
    if !r.is_integer() {
        return Err(Error::InvalidArgument(format!("{text} is not an integer")).into());
    }
    Ok(r.to_integer())
}
