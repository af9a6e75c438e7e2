use nilforge::scalar::parse_rational;
use nilforge::{Error, LieElement, Partition, Rational, Real, Result, Weight};

pub fn weight(text: &str) -> Result<Weight> {
    let t = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let entries = t
        .split(',')
        .map(|e| e.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad weight {text:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Weight::new(entries))
}

pub fn partition(text: &str) -> Result<Partition> {
    Partition::parse(text.trim().trim_start_matches('(').trim_end_matches(')'))
}

pub fn usize_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad integer list {text:?}"))))
        .collect()
}

/// Elements in compact form separated by `;`.
pub fn elements(k: usize, s: usize, text: &str) -> Result<Vec<LieElement>> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| LieElement::parse_compact(k, s, t))
        .collect()
}

/// A coordinate: a rational literal, or `phi`, `sqrtN` / `sqrt(N)` with an
/// optional sign.
#[derive(Debug, Clone)]
pub enum Number {
    Exact(Rational),
    Phi { negative: bool },
    Sqrt { negative: bool, radicand: u64 },
}

impl Number {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let (negative, body) = match t.strip_prefix('-') {
            Some(b) => (true, b.trim()),
            None => (false, t.strip_prefix('+').unwrap_or(t).trim()),
        };
        if body == "phi" {
            return Ok(Number::Phi { negative });
        }
        if let Some(r) = body.strip_prefix("sqrt") {
            let r = r.trim_start_matches('(').trim_end_matches(')');
            let radicand = r.parse::<u64>().map_err(|_| Error::Parse(format!("bad square root {text:?}")))?;
            return Ok(Number::Sqrt { negative, radicand });
        }
        parse_rational(t).map(Number::Exact)
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Number::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_real(&self, digits: u32) -> Result<Real> {
        let (negative, v) = match self {
            Number::Exact(r) => return Ok(Real::from_rational(r, digits)),
            Number::Phi { negative } => (*negative, Real::golden_ratio(digits)),
            Number::Sqrt { negative, radicand } => {
                let n = i64::try_from(*radicand).map_err(|_| Error::Overflow(format!("sqrt{radicand}")))?;
                (*negative, Real::from_integer(n).sqrt(digits)?)
            }
        };
        Ok(if negative { -v } else { v })
    }
}

/// Rows separated by `;`, entries by `,`.
pub fn number_matrix(text: &str) -> Result<Vec<Vec<Number>>> {
    text.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| r.split(',').map(Number::parse).collect())
        .collect()
}

/// A decimal with an optional exponent, e.g. `3.25e-7`, read exactly.
pub fn decimal(text: &str) -> Result<Rational> {
    let t = text.trim();
    let Some((mant, exp)) = t.split_once(['e', 'E']) else {
        return parse_rational(t);
    };
    let m = parse_rational(mant)?;
    let e: i32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?;
    let ten = Rational::from_integer(10.into());
    let scale = if e >= 0 { num::pow(ten, e as usize) } else { num::pow(ten, e.unsigned_abs() as usize).recip() };
    Ok(m * scale)
}

/// `NILFORGE_MAX_S` if set, otherwise the library default.
pub fn max_s() -> Result<usize> {
    match std::env::var("NILFORGE_MAX_S") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidParameter(format!("NILFORGE_MAX_S={v:?} is not a positive integer"))),
        Err(_) => Ok(nilforge::rep::DEFAULT_MAX_S),
    }
}

pub fn check_cap(s: usize) -> Result<()> {
    let cap = max_s()?;
    if s > cap {
        return Err(Error::InvalidParameter(format!(
            "s = {s} exceeds the cap {cap}; raise NILFORGE_MAX_S to allow it"
        )));
    }
    Ok(())
}
