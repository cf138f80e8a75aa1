//! Reading operands and scalar arguments from the command line.

use std::collections::VecDeque;
use std::path::Path;

use cdlab::document::{parse_assignments, parse_element_json, parse_inline};
use cdlab::element::{ComplexScalar, Element};
use cdlab::rational::parse_rational;

use crate::CliError;

/// Operand flags shared by every subcommand that takes elements.
#[derive(clap::Args, Debug, Default)]
pub struct Operands {
    /// Element operand: a JSON element file, inline JSON, or `LEVEL:IDX=VAL,...`. Repeat for more operands.
    #[arg(long = "elem", value_name = "FILE|INLINE")]
    pub elems: Vec<String>,
    /// Level for operands given with --coeff / --coeff-b.
    #[arg(long)]
    pub level: Option<u32>,
    /// Coefficient `IDX=VAL` of the first operand (repeatable).
    #[arg(long = "coeff", value_name = "IDX=VAL")]
    pub coeffs: Vec<String>,
    /// Coefficient `IDX=VAL` of the second operand (repeatable).
    #[arg(long = "coeff-b", value_name = "IDX=VAL")]
    pub coeffs_b: Vec<String>,
}

pub fn read_element(arg: &str) -> Result<Element, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        parse_element_json(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")))
    } else if arg.trim_start().starts_with('{') {
        parse_element_json(arg).map_err(|e| CliError::Input(format!("--elem: {e}")))
    } else if arg.contains(':') {
        parse_inline(arg).map_err(|e| CliError::Input(format!("--elem {arg}: {e}")))
    } else {
        Err(CliError::Input(format!(
            "--elem {arg}: no such file, and not of the form LEVEL:IDX=VAL,..."
        )))
    }
}

impl Operands {
    fn inline(&self, coeffs: &[String], flag: &str) -> Result<Option<Element>, CliError> {
        if coeffs.is_empty() {
            return Ok(None);
        }
        let level = self
            .level
            .ok_or_else(|| CliError::Input(format!("{flag} needs --level")))?;
        parse_assignments(level, coeffs)
            .map(Some)
            .map_err(|e| CliError::Input(format!("{flag}: {e}")))
    }

    /// All operands in order: the `--coeff` operand (if any) fills the first
    /// slot, the `--coeff-b` operand the second, and `--elem` values fill the
    /// remaining slots in the order given.
    pub fn all(&self) -> Result<Vec<Element>, CliError> {
        let mut files: VecDeque<Element> = self
            .elems
            .iter()
            .map(|e| read_element(e))
            .collect::<Result<_, _>>()?;
        let a = self.inline(&self.coeffs, "--coeff")?;
        let b = self.inline(&self.coeffs_b, "--coeff-b")?;
        let mut out = Vec::new();
        if a.is_some() || b.is_some() {
            match a {
                Some(a) => out.push(a),
                None => out.extend(files.pop_front()),
            }
            if let Some(b) = b {
                out.push(b);
            }
        }
        out.extend(files);
        Ok(out)
    }

    pub fn exactly<const N: usize>(&self, what: &str) -> Result<[Element; N], CliError> {
        let all = self.all()?;
        let got = all.len();
        all.try_into().map_err(|_| {
            CliError::Input(format!("{what} takes {N} operand(s), got {got}"))
        })
    }
}

/// `RE` or `RE,IM` with exact rationals, e.g. `0,1` for `i_n`.
pub fn parse_complex(text: &str) -> Result<ComplexScalar, CliError> {
    let (re, im) = match text.split_once(',') {
        Some((re, im)) => (re, im),
        None => (text, "0"),
    };
    let parse = |s: &str| {
        parse_rational(s.trim())
            .map_err(|e| CliError::Input(format!("complex scalar {text:?}: {e}")))
    };
    Ok(ComplexScalar::new(parse(re)?, parse(im)?))
}

/// A sign sequence such as `+-+` or `+,-,+`.
pub fn parse_signs(text: &str) -> Result<Vec<i8>, CliError> {
    text.chars()
        .filter(|c| *c != ',' && !c.is_whitespace())
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            other => Err(CliError::Input(format!(
                "signs {text:?}: unexpected {other:?}, use + and -"
            ))),
        })
        .collect()
}

pub fn parse_sign(text: &str) -> Result<i8, CliError> {
    match text {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        other => Err(CliError::Input(format!("sign {other:?}: use + or -"))),
    }
}
