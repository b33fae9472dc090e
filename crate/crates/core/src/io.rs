//! Sequence file format.
//!
//! ```text
//! r=<alphabet_size> N=<length>
//! <symbols>
//! ```
//!
//! For `r <= 10` the symbols are ASCII digits on one line with no separators;
//! for larger alphabets they are whitespace-separated decimal integers. A file
//! without a header is read as a raw binary sequence of ASCII `0`/`1`.

use std::io::{BufRead, Write};

use crate::words::SymbolSequence;
use crate::{Error, Result};

pub fn write_sequence<W: Write>(mut out: W, x: &SymbolSequence) -> Result<()> {
    writeln!(out, "r={} N={}", x.alphabet_size(), x.len())?;
    if x.alphabet_size() <= 10 {
        let mut line: Vec<u8> = x.symbols().iter().map(|&s| b'0' + s).collect();
        line.push(b'\n');
        out.write_all(&line)?;
    } else {
        let mut first = true;
        for &s in x.symbols() {
            if !first {
                out.write_all(b" ")?;
            }
            first = false;
            write!(out, "{s}")?;
        }
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Serializes to an in-memory buffer.
pub fn sequence_to_bytes(x: &SymbolSequence) -> Vec<u8> {
    let mut buf = Vec::with_capacity(x.len() + 32);
    write_sequence(&mut buf, x).expect("writing to a Vec cannot fail");
    buf
}

struct Header {
    alphabet_size: u32,
    len: usize,
}

fn parse_header(line: &str) -> Result<Header> {
    let mut alphabet_size = None;
    let mut len = None;
    for field in line.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| Error::Parse {
            line: 1,
            message: format!("malformed header field '{field}'"),
        })?;
        let parsed: u64 = value.parse().map_err(|_| Error::Parse {
            line: 1,
            message: format!("header value '{value}' is not an integer"),
        })?;
        match key {
            "r" => alphabet_size = Some(parsed as u32),
            "N" => len = Some(parsed as usize),
            other => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("unknown header field '{other}'"),
                })
            }
        }
    }
    match (alphabet_size, len) {
        (Some(alphabet_size), Some(len)) => Ok(Header { alphabet_size, len }),
        _ => Err(Error::Parse {
            line: 1,
            message: "header must carry r=<alphabet_size> N=<length>".into(),
        }),
    }
}

pub fn read_sequence<R: BufRead>(mut input: R) -> Result<SymbolSequence> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    let mut rest = String::new();
    input.read_to_string(&mut rest)?;

    if !first.trim_start().starts_with("r=") {
        // raw binary
        let symbols = first
            .chars()
            .chain(rest.chars())
            .filter(|c| !c.is_whitespace())
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::Parse {
                    line: 1,
                    message: format!("raw binary file has '{other}' at symbol {i}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        return SymbolSequence::binary(symbols);
    }

    let header = parse_header(first.trim())?;
    let symbols: Vec<u8> = if header.alphabet_size <= 10 {
        rest.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse {
                    line: 2,
                    message: format!("'{c}' is not a digit"),
                })
            })
            .collect::<Result<_>>()?
    } else {
        rest.split_whitespace()
            .map(|tok| {
                tok.parse::<u8>().map_err(|_| Error::Parse {
                    line: 2,
                    message: format!("'{tok}' is not a symbol below 256"),
                })
            })
            .collect::<Result<_>>()?
    };
    if symbols.len() != header.len {
        return Err(Error::Parse {
            line: 2,
            message: format!(
                "header announces N={} but {} symbols follow",
                header.len,
                symbols.len()
            ),
        });
    }
    SymbolSequence::new(header.alphabet_size, symbols)
}
