use std::fmt;
use std::str::FromStr;

/// Inclusive integer range: `7`, `2..16` or `2..=16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("expected a non-negative integer, got {t:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Edge selection for `classify`: every `a` in `1..n-1`, or a fixed span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSelection {
    All,
    Span(Span),
}

impl EdgeSelection {
    pub fn for_n(&self, n: usize) -> Vec<usize> {
        match self {
            EdgeSelection::All => (1..n).collect(),
            EdgeSelection::Span(s) => s.iter().filter(|&a| a >= 1 && a < n).collect(),
        }
    }
}

impl FromStr for EdgeSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("all") {
            Ok(EdgeSelection::All)
        } else {
            s.parse().map(EdgeSelection::Span)
        }
    }
}
