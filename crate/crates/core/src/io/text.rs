//! Line-oriented `key value…` documents with fixed field order.

use std::fmt::Write as _;

/// Where a document went wrong: a dotted field path and, when known, the
/// 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}{path}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct FormatError {
    pub path: String,
    pub line: Option<usize>,
    pub message: String,
}

impl FormatError {
    pub(crate) fn at(path: impl Into<String>, line: Option<usize>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

/// Real with 17 significant digits: `f64` values round-trip exactly.
pub(crate) fn real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Default)]
pub(crate) struct Writer {
    out: String,
}

impl Writer {
    pub fn line(&mut self, key: &str, values: &[String]) {
        self.out.push_str(key);
        for v in values {
            let _ = write!(self.out, " {v}");
        }
        self.out.push('\n');
    }

    pub fn reals(&mut self, key: &str, xs: &[f64]) {
        let vals: Vec<String> = xs.iter().map(|&x| real(x)).collect();
        self.line(key, &vals);
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub(crate) struct Line<'a> {
    pub number: usize,
    pub values: Vec<&'a str>,
    pub path: String,
}

impl Line<'_> {
    fn err(&self, message: impl Into<String>) -> FormatError {
        FormatError::at(self.path.clone(), Some(self.number), message)
    }

    pub fn arity(&self, n: usize) -> Result<(), FormatError> {
        if self.values.len() == n {
            Ok(())
        } else {
            Err(self.err(format!("expected {n} values, found {}", self.values.len())))
        }
    }

    pub fn real_at(&self, k: usize) -> Result<f64, FormatError> {
        let tok = self.values.get(k).ok_or_else(|| self.err(format!("missing value {}", k + 1)))?;
        match tok.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(self.err(format!("expected a finite real, found `{tok}`"))),
        }
    }

    pub fn reals(&self) -> Result<Vec<f64>, FormatError> {
        (0..self.values.len()).map(|k| self.real_at(k)).collect()
    }

    pub fn real(&self) -> Result<f64, FormatError> {
        self.arity(1)?;
        self.real_at(0)
    }

    pub fn uint_at(&self, k: usize) -> Result<u64, FormatError> {
        let tok = self.values.get(k).ok_or_else(|| self.err(format!("missing value {}", k + 1)))?;
        tok.parse::<u64>()
            .map_err(|_| self.err(format!("expected a non-negative integer, found `{tok}`")))
    }

    pub fn uint(&self) -> Result<u64, FormatError> {
        self.arity(1)?;
        self.uint_at(0)
    }

    pub fn word(&self) -> Result<&str, FormatError> {
        self.arity(1)?;
        Ok(self.values[0])
    }

    pub fn flag(&self) -> Result<bool, FormatError> {
        match self.word()? {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(self.err(format!("expected `true` or `false`, found `{other}`"))),
        }
    }

    pub fn invalid(&self, message: impl Into<String>) -> FormatError {
        self.err(message)
    }
}

/// Reads fields in their canonical order. Blank lines and `#` comments are
/// skipped.
pub(crate) struct Reader<'a> {
    lines: Vec<(usize, &'a str, Vec<&'a str>)>,
    pos: usize,
    pub root: String,
}

impl<'a> Reader<'a> {
    pub fn new(text: &'a str, root: &str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.trim();
                if l.is_empty() || l.starts_with('#') {
                    return None;
                }
                let mut toks = l.split_whitespace();
                let key = toks.next()?;
                Some((i + 1, key, toks.collect()))
            })
            .collect();
        Self {
            lines,
            pos: 0,
            root: root.to_string(),
        }
    }

    fn path(&self, field: &str) -> String {
        format!("{}.{field}", self.root)
    }

    pub fn peek_key(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|l| l.1)
    }

    /// Next line, which must carry `key`.
    pub fn expect(&mut self, key: &str) -> Result<Line<'a>, FormatError> {
        self.expect_as(key, key)
    }

    /// Like [`Self::expect`], reporting errors under `field` (e.g. `surface[2]`).
    pub fn expect_as(&mut self, key: &str, field: &str) -> Result<Line<'a>, FormatError> {
        let path = self.path(field);
        match self.lines.get(self.pos) {
            None => Err(FormatError::at(path, None, "missing field")),
            Some((n, k, _)) if *k != key => Err(FormatError::at(
                path,
                Some(*n),
                format!("expected field `{key}`, found `{k}`"),
            )),
            Some((n, _, v)) => {
                self.pos += 1;
                Ok(Line {
                    number: *n,
                    values: v.clone(),
                    path,
                })
            }
        }
    }

    pub fn optional(&mut self, key: &str) -> Option<Line<'a>> {
        if self.peek_key() == Some(key) {
            self.expect(key).ok()
        } else {
            None
        }
    }

    /// Header line `format` followed by `version`, checked against `expected`.
    pub fn header(&mut self, format: &str, expected: u64) -> Result<(), FormatError> {
        let head = self.lines.first().map(|l| (l.0, l.1));
        match head {
            Some((_, k)) if k == format => self.pos += 1,
            Some((n, k)) => {
                return Err(FormatError::at(
                    self.root.clone(),
                    Some(n),
                    format!("not a `{format}` document (starts with `{k}`)"),
                ))
            }
            None => return Err(FormatError::at(self.root.clone(), None, "empty document")),
        }
        let v = self.expect("version")?;
        let found = v.uint()?;
        if found != expected {
            return Err(v.invalid(format!("unsupported version {found}, expected {expected}")));
        }
        Ok(())
    }

    pub fn finish(self) -> Result<(), FormatError> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some((n, k, _)) => Err(FormatError::at(
                format!("{}.{k}", self.root),
                Some(*n),
                "unexpected field",
            )),
        }
    }
}
