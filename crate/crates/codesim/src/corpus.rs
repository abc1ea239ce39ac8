//! Submission ingestion and three-stage source normalization.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::{Error, Result};

/// Whitespace bytes removed by the final normalization stage.
pub const WHITESPACE: [u8; 6] = [b' ', b'\t', b'\n', b'\r', 0x0B, 0x0C];

/// One participant's source file.
#[derive(Debug, Clone)]
pub struct Submission {
    pub participant_id: String,
    pub raw: Vec<u8>,
    pub normalized: Vec<u8>,
}

/// All submissions for one task, sorted by participant id.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub task_id: String,
    pub submissions: Vec<Submission>,
}

impl Corpus {
    pub fn k(&self) -> usize {
        self.submissions.len()
    }
}

/// A loaded corpus plus non-fatal ingestion and normalization warnings.
#[derive(Debug)]
pub struct CorpusLoad {
    pub corpus: Corpus,
    pub warnings: Vec<String>,
}

/// Result of [`normalize`]: the cleaned bytes plus a flag for a block
/// comment left open at end of input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub bytes: Vec<u8>,
    pub unterminated_comment: bool,
}

fn line_span(text: &[u8], start: usize) -> (usize, usize) {
    match text[start..].iter().position(|&b| b == b'\n') {
        Some(off) => (start + off, start + off + 1),
        None => (text.len(), text.len()),
    }
}

fn first_nonblank(line: &[u8]) -> Option<u8> {
    line.iter()
        .copied()
        .find(|b| !matches!(b, b' ' | b'\t' | b'\r' | 0x0B | 0x0C))
}

fn ends_with_continuation(line: &[u8]) -> bool {
    let line = line.strip_suffix(b"\r").unwrap_or(line);
    line.ends_with(b"\\")
}

/// Remove every line whose first non-blank byte is `#`, together with its
/// backslash-continued successor lines. All other lines pass through intact.
pub fn strip_directives(text: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(text.len());
    let mut pos = 0;
    while pos < text.len() {
        let (content_end, next_start) = line_span(text, pos);
        let line = &text[pos..content_end];
        if first_nonblank(line) == Some(b'#') {
            let mut continued = ends_with_continuation(line);
            pos = next_start;
            while continued && pos < text.len() {
                let (ce, ns) = line_span(text, pos);
                continued = ends_with_continuation(&text[pos..ce]);
                pos = ns;
            }
        } else {
            out.extend_from_slice(&text[pos..next_start]);
            pos = next_start;
        }
    }
    out
}

/// Remove `//` and `/* */` comments while leaving string and character
/// literals untouched. A line comment's terminating newline is kept; a block
/// comment is replaced by nothing. Returns the stripped bytes and whether a
/// block comment was still open at end of input.
pub fn strip_comments(text: &[u8]) -> (Vec<u8>, bool) {
    enum State {
        Code,
        Str,
        Chr,
        Line,
        Block,
    }

    let mut out = Vec::with_capacity(text.len());
    let mut state = State::Code;
    let mut i = 0;
    while i < text.len() {
        let b = text[i];
        match state {
            State::Code => {
                if b == b'/' && text.get(i + 1) == Some(&b'/') {
                    state = State::Line;
                    i += 2;
                    continue;
                }
                if b == b'/' && text.get(i + 1) == Some(&b'*') {
                    state = State::Block;
                    i += 2;
                    continue;
                }
                if b == b'"' {
                    state = State::Str;
                } else if b == b'\'' {
                    state = State::Chr;
                }
                out.push(b);
            }
            State::Str | State::Chr => {
                let quote = if matches!(state, State::Str) {
                    b'"'
                } else {
                    b'\''
                };
                if b == b'\\' && i + 1 < text.len() {
                    out.push(b);
                    out.push(text[i + 1]);
                    i += 2;
                    continue;
                }
                // An unescaped newline ends an unterminated literal.
                if b == quote || b == b'\n' {
                    state = State::Code;
                }
                out.push(b);
            }
            State::Line => {
                if b == b'\n' {
                    out.push(b);
                    state = State::Code;
                }
            }
            State::Block => {
                if b == b'*' && text.get(i + 1) == Some(&b'/') {
                    state = State::Code;
                    i += 2;
                    continue;
                }
            }
        }
        i += 1;
    }
    (out, matches!(state, State::Block))
}

/// Drop the six whitespace bytes; everything else passes through in order.
pub fn strip_whitespace(text: &[u8]) -> Vec<u8> {
    text.iter()
        .copied()
        .filter(|b| !WHITESPACE.contains(b))
        .collect()
}

/// Apply the three stages in their fixed order:
/// directives, then comments, then whitespace.
pub fn normalize(raw: &[u8]) -> Normalized {
    let without_directives = strip_directives(raw);
    let (without_comments, unterminated) = strip_comments(&without_directives);
    Normalized {
        bytes: strip_whitespace(&without_comments),
        unterminated_comment: unterminated,
    }
}

/// Read every file in `directory` matching any of `patterns`, normalize each,
/// and assemble a [`Corpus`] keyed and sorted by participant id (the file name
/// minus its final extension).
pub fn load_corpus(directory: &Path, patterns: &[String]) -> Result<CorpusLoad> {
    let compiled: Vec<glob::Pattern> = patterns
        .iter()
        .map(|p| {
            glob::Pattern::new(p)
                .map_err(|e| Error::Config(format!("invalid file pattern `{p}`: {e}")))
        })
        .collect::<Result<_>>()?;
    if compiled.is_empty() {
        return Err(Error::Config("no file patterns given".into()));
    }

    let entries = fs::read_dir(directory).map_err(|e| {
        Error::Ingestion(format!(
            "cannot read directory {}: {e}",
            directory.display()
        ))
    })?;

    let mut names: Vec<String> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| {
            Error::Ingestion(format!(
                "cannot read directory {}: {e}",
                directory.display()
            ))
        })?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if compiled.iter().any(|p| p.matches(&name)) {
            names.push(name);
        }
    }
    names.sort();

    if names.is_empty() {
        return Err(Error::Ingestion(format!(
            "empty corpus: no files in {} match {}",
            directory.display(),
            patterns.join(",")
        )));
    }

    let mut warnings = Vec::new();
    let mut by_id: BTreeMap<String, (String, Vec<u8>)> = BTreeMap::new();
    for name in names {
        let path = directory.join(&name);
        match fs::metadata(&path) {
            Ok(meta) if meta.is_file() => {}
            Ok(_) => continue,
            Err(e) => {
                warnings.push(format!("skipped unreadable file {}: {e}", path.display()));
                continue;
            }
        }
        let raw = match fs::read(&path) {
            Ok(bytes) => bytes,
            Err(e) => {
                warnings.push(format!("skipped unreadable file {}: {e}", path.display()));
                continue;
            }
        };
        let id = Path::new(&name)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| name.clone());
        if let Some((prior, _)) = by_id.get(&id) {
            return Err(Error::Ingestion(format!(
                "duplicate participant id `{id}` (from {prior} and {name})"
            )));
        }
        by_id.insert(id, (name, raw));
    }

    if by_id.is_empty() {
        return Err(Error::Ingestion(format!(
            "empty corpus: no readable files in {} match {}",
            directory.display(),
            patterns.join(",")
        )));
    }

    let mut submissions = Vec::with_capacity(by_id.len());
    for (id, (_, raw)) in by_id {
        let normalized = normalize(&raw);
        if normalized.unterminated_comment {
            warnings.push(format!(
                "{id}: unterminated block comment extends to end of file"
            ));
        }
        if normalized.bytes.is_empty() {
            warnings.push(format!("{id}: normalized content is empty"));
        }
        submissions.push(Submission {
            participant_id: id,
            raw,
            normalized: normalized.bytes,
        });
    }

    let task_id = directory
        .canonicalize()
        .ok()
        .and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .unwrap_or_else(|| directory.display().to_string());

    Ok(CorpusLoad {
        corpus: Corpus {
            task_id,
            submissions,
        },
        warnings,
    })
}
