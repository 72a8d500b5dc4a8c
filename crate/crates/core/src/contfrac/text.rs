use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::ContinuedFraction;
use crate::Error;

// Digits shown for stream expansions.
const STREAM_PREVIEW: usize = 10;

fn join(d: &[BigInt], sep: &str) -> String {
    d.iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContinuedFraction::Finite(d) => match d.split_first() {
                Some((a0, [])) => write!(f, "[{a0}]"),
                Some((a0, rest)) => write!(f, "[{a0}; {}]", join(rest, ", ")),
                None => write!(f, "[]"),
            },
            ContinuedFraction::Periodic { a0, pre, period } => {
                write!(f, "[{a0}; ")?;
                if !pre.is_empty() {
                    write!(f, "{}, ", join(pre, ", "))?;
                }
                write!(f, "({})^w]", join(period, ","))
            }
            ContinuedFraction::Stream { .. } => {
                let d = self.prefix(STREAM_PREVIEW).map_err(|_| fmt::Error)?;
                write!(f, "[{}; {}, ...]", d[0], join(&d[1..], ", "))
            }
        }
    }
}

fn parse_ints(s: &str) -> Result<Vec<BigInt>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad digit {t:?}")))
        })
        .collect()
}

/// Parses `[a0; a1, a2]`, `[a0; a1, (b1,b2)^w]` and `[(b1,b2)^w]`
/// (`^ω` is accepted for `^w`; `;` may be written as `,`).
impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("continued fraction must be bracketed: {s:?}")))?
            .replace(';', ",")
            .replace('ω', "w");
        let (head, period) = match inner.find('(') {
            Some(open) => {
                let rest = &inner[open + 1..];
                let close = rest
                    .find(')')
                    .ok_or_else(|| Error::Parse("unclosed period".into()))?;
                if rest[close + 1..].trim() != "^w" {
                    return Err(Error::Parse(
                        "period must be written (…)^w at the end".into(),
                    ));
                }
                (&inner[..open], Some(parse_ints(&rest[..close])?))
            }
            None => (inner.as_str(), None),
        };
        let head = parse_ints(head)?;
        match period {
            None => ContinuedFraction::finite(head),
            Some(period) if head.is_empty() => ContinuedFraction::purely_periodic(period),
            Some(period) => {
                let mut it = head.into_iter();
                let a0 = it.next().expect("non-empty");
                ContinuedFraction::periodic(a0, it.collect(), period)
            }
        }
    }
}
