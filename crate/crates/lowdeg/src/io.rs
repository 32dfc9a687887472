//! File formats for function tables, codewords, and message polynomials.
//!
//! Function table (text): line 1 is `p s m`, line 2 the modulus
//! coefficients low-to-high, then one canonical element index per point in
//! canonical point order. Codeword (text): line 1 is `p s m d` (the field
//! comes from the built-in modulus table), then one letter per line as d+1
//! element indices in canonical line order. Message polynomial (JSON):
//! `{"m": .., "terms": [{"exps": [..], "coeff": index}, ..]}`.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::plcode::Codeword;
use crate::poly::{pow_u128, FunctionTable, MultiPoly, PolyError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed {what} at line {line}")]
    Malformed { what: &'static str, line: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("bad message polynomial: {0}")]
    BadMessage(String),
}

pub fn write_table(w: &mut impl Write, field: &Field, table: &FunctionTable) -> Result<(), IoError> {
    writeln!(w, "{} {} {}", field.p(), field.s(), table.m())?;
    let modulus: Vec<String> = field.modulus().iter().map(u64::to_string).collect();
    writeln!(w, "{}", modulus.join(" "))?;
    for v in table.values() {
        writeln!(w, "{}", v.index())?;
    }
    Ok(())
}

pub fn read_table(r: &mut impl BufRead) -> Result<(Field, FunctionTable), IoError> {
    let mut lines = r.lines();
    let mut next = |line: usize, what: &'static str| -> Result<String, IoError> {
        lines
            .next()
            .transpose()?
            .ok_or(IoError::Malformed { what, line })
    };
    let header = next(1, "table header")?;
    let parts: Vec<u64> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| IoError::Malformed {
            what: "table header",
            line: 1,
        })?;
    let [p, s, m] = parts[..] else {
        return Err(IoError::Malformed {
            what: "table header",
            line: 1,
        });
    };
    let modulus: Vec<u64> = next(2, "modulus")?
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| IoError::Malformed {
            what: "modulus",
            line: 2,
        })?;
    let field = Field::with_modulus(p, s as u32, &modulus)?;
    let count = pow_u128(field.q(), m as u32);
    let mut values = Vec::new();
    for i in 0..count {
        let line = i as usize + 3;
        let idx: u64 = next(line, "table value")?
            .trim()
            .parse()
            .map_err(|_| IoError::Malformed {
                what: "table value",
                line,
            })?;
        values.push(field.element(idx)?);
    }
    let table = FunctionTable::new(&field, m as usize, values)?;
    Ok((field, table))
}

pub fn write_codeword(w: &mut impl Write, field: &Field, word: &Codeword) -> Result<(), IoError> {
    writeln!(w, "{} {} {} {}", field.p(), field.s(), word.m, word.d)?;
    for letter in &word.letters {
        let coeffs: Vec<String> = letter.iter().map(|c| c.index().to_string()).collect();
        writeln!(w, "{}", coeffs.join(" "))?;
    }
    Ok(())
}

pub fn read_codeword(r: &mut impl BufRead) -> Result<(Field, Codeword), IoError> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .transpose()?
        .ok_or(IoError::Malformed {
            what: "codeword header",
            line: 1,
        })?;
    let parts: Vec<u64> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| IoError::Malformed {
            what: "codeword header",
            line: 1,
        })?;
    let [p, s, m, d] = parts[..] else {
        return Err(IoError::Malformed {
            what: "codeword header",
            line: 1,
        });
    };
    let field = Field::new(p, s as u32)?;
    let np = pow_u128(field.q(), m as u32);
    let n = np * np;
    let mut letters = Vec::with_capacity(n as usize);
    for i in 0..n {
        let line = i as usize + 2;
        let row = lines
            .next()
            .transpose()?
            .ok_or(IoError::Malformed {
                what: "codeword letter",
                line,
            })?;
        let coeffs: Vec<u64> = row
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| IoError::Malformed {
                what: "codeword letter",
                line,
            })?;
        if coeffs.len() != d as usize + 1 {
            return Err(IoError::Malformed {
                what: "codeword letter",
                line,
            });
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| field.element(c))
            .collect::<Result<Vec<_>, _>>()?;
        letters.push(coeffs);
    }
    Ok((
        field,
        Codeword {
            m: m as usize,
            d: d as u32,
            letters,
        },
    ))
}

#[derive(Debug, Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    coeff: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct MultiPolyJson {
    m: usize,
    terms: Vec<TermJson>,
}

pub fn multipoly_to_json(field: &Field, poly: &MultiPoly) -> String {
    let _ = field;
    let doc = MultiPolyJson {
        m: poly.m(),
        terms: poly
            .terms()
            .map(|(exps, coeff)| TermJson {
                exps: exps.clone(),
                coeff: coeff.index(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn multipoly_from_json(field: &Field, text: &str) -> Result<MultiPoly, IoError> {
    let doc: MultiPolyJson =
        serde_json::from_str(text).map_err(|e| IoError::BadMessage(e.to_string()))?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in doc.terms {
        if t.exps.len() != doc.m {
            return Err(IoError::BadMessage(format!(
                "exponent vector of arity {} in a {}-variate polynomial",
                t.exps.len(),
                doc.m
            )));
        }
        terms.push((t.exps, field.element(t.coeff)?));
    }
    Ok(MultiPoly::from_terms(doc.m, terms))
}
