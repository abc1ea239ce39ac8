//! Synthetic C++-like program generator for corpus tests.
//!
//! Programs are held as token streams. `render_canonical` and
//! `render_mutated` emit the same tokens with different formatting, comments,
//! and preprocessor directives, so every rendering of one `Program`
//! normalizes to identical bytes by construction.

use std::fs;
use std::path::Path;

use rand::Rng;

/// A program as include directives plus statement lines of atomic tokens.
#[derive(Debug, Clone)]
pub struct Program {
    pub includes: Vec<String>,
    pub lines: Vec<Vec<String>>,
}

const INCLUDE_POOL: [&str; 6] = [
    "<iostream>",
    "<vector>",
    "<cstdio>",
    "<string>",
    "<algorithm>",
    "<cmath>",
];

const COMMENT_WORDS: [&str; 8] = [
    "loop", "state", "guard", "temp", "sum", "edge", "note", "fix",
];

fn check_token(tok: &str) {
    assert!(!tok.is_empty());
    assert!(
        !tok.starts_with('#'),
        "token {tok:?} could form a directive"
    );
    assert!(!tok.ends_with('\\'), "token {tok:?} could continue a line");
    if !tok.starts_with('"') {
        assert!(!tok.contains('/'), "token {tok:?} could open a comment");
    }
}

impl Program {
    /// Plain rendering: one `#include` per line, tokens separated by single
    /// spaces, one statement per line.
    pub fn render_canonical(&self) -> String {
        let mut out = String::new();
        for inc in &self.includes {
            out.push_str(&format!("#include {inc}\n"));
        }
        for line in &self.lines {
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Same token stream under random whitespace, comment, and directive
    /// noise. Normalizes to the same bytes as the canonical rendering.
    pub fn render_mutated<R: Rng>(&self, rng: &mut R) -> String {
        let mut out = String::new();
        for inc in &self.includes {
            if rng.random_bool(0.3) {
                out.push_str("  ");
            }
            out.push_str(&format!("#include {inc}"));
            out.push_str(newline(rng));
        }
        for line in &self.lines {
            while rng.random_bool(0.2) {
                out.push_str(&random_directive(rng));
            }
            if rng.random_bool(0.15) {
                out.push_str(&whitespace_run(rng));
            }
            for (t, tok) in line.iter().enumerate() {
                check_token(tok);
                if t > 0 {
                    out.push_str(&token_gap(rng));
                }
                out.push_str(tok);
            }
            if rng.random_bool(0.3) {
                out.push_str(&format!(" // {}", comment_text(rng)));
            }
            out.push_str(newline(rng));
            if rng.random_bool(0.1) {
                out.push_str(&whitespace_run(rng));
                out.push_str(newline(rng));
            }
        }
        while rng.random_bool(0.3) {
            out.push_str(&random_directive(rng));
        }
        out
    }
}

fn newline<R: Rng>(rng: &mut R) -> &'static str {
    if rng.random_bool(0.25) {
        "\r\n"
    } else {
        "\n"
    }
}

fn whitespace_run<R: Rng>(rng: &mut R) -> String {
    let bytes = [' ', '\t', '\x0b', '\x0c', ' ', ' '];
    (0..rng.random_range(1..=3))
        .map(|_| bytes[rng.random_range(0..bytes.len())])
        .collect()
}

fn comment_text<R: Rng>(rng: &mut R) -> String {
    let n = rng.random_range(1..=3);
    (0..n)
        .map(|_| COMMENT_WORDS[rng.random_range(0..COMMENT_WORDS.len())])
        .collect::<Vec<_>>()
        .join(" ")
}

/// Whitespace between two tokens, sometimes wrapping a block comment.
fn token_gap<R: Rng>(rng: &mut R) -> String {
    let mut gap = whitespace_run(rng);
    if rng.random_bool(0.12) {
        gap.push_str(&format!("/* {} */", comment_text(rng)));
        gap.push_str(&whitespace_run(rng));
    }
    if rng.random_bool(0.1) {
        gap.push('\n');
    }
    gap
}

/// A complete directive insertion: one or more physical lines that the
/// directive stripper removes in full.
fn random_directive<R: Rng>(rng: &mut R) -> String {
    let nl = newline(rng);
    match rng.random_range(0..5) {
        0 => format!(
            "#define STUB{} {}{nl}",
            rng.random_range(0..100),
            rng.random_range(0..1000)
        ),
        1 => format!("  #pragma warn{}{nl}", rng.random_range(0..10)),
        2 => format!("#include <extra{}>{nl}", rng.random_range(0..50)),
        3 => format!(
            "#define MAC{}(x) \\{nl}  ((x) + {}){nl}",
            rng.random_range(0..100),
            rng.random_range(0..100)
        ),
        _ => format!("#if {}{nl}#endif{nl}", rng.random_range(0..2)),
    }
}

/// Generate a random program whose normalized length is at least `target`.
pub fn gen_program<R: Rng>(rng: &mut R, target: usize) -> Program {
    let include_count = rng.random_range(1..=3);
    let mut pool: Vec<&str> = INCLUDE_POOL.to_vec();
    let mut includes = Vec::new();
    for _ in 0..include_count {
        includes.push(pool.remove(rng.random_range(0..pool.len())).to_string());
    }

    let mut lines: Vec<Vec<String>> = vec![["int", "main", "(", ")", "{"]
        .iter()
        .map(|s| s.to_string())
        .collect()];
    let mut open_braces = 1usize;

    let var = |rng: &mut R| format!("v{}", rng.random_range(0..200));
    let num = |rng: &mut R| format!("{}", rng.random_range(0..10000));

    while lines.iter().flatten().map(String::len).sum::<usize>() < target {
        let statement: Vec<String> = match rng.random_range(0..8) {
            0 => vec!["int".into(), var(rng), "=".into(), num(rng), ";".into()],
            1 => vec![
                var(rng),
                "=".into(),
                var(rng),
                "+".into(),
                num(rng),
                ";".into(),
            ],
            2 => vec![
                var(rng),
                "+=".into(),
                var(rng),
                "*".into(),
                num(rng),
                ";".into(),
            ],
            3 => vec![
                "std::cout".into(),
                "<<".into(),
                var(rng),
                "<<".into(),
                "std::endl".into(),
                ";".into(),
            ],
            4 => vec![
                "const".into(),
                "char*".into(),
                format!("s{}", rng.random_range(0..100)),
                "=".into(),
                format!(
                    "\"w{}://x{}\"",
                    rng.random_range(0..100),
                    rng.random_range(0..100)
                ),
                ";".into(),
            ],
            5 => vec![
                "char".into(),
                format!("c{}", rng.random_range(0..100)),
                "=".into(),
                format!("'{}'", (b'a' + rng.random_range(0..26u8)) as char),
                ";".into(),
            ],
            6 => {
                open_braces += 1;
                vec![
                    "if".into(),
                    "(".into(),
                    var(rng),
                    ">".into(),
                    num(rng),
                    ")".into(),
                    "{".into(),
                ]
            }
            _ => {
                let i = format!("i{}", rng.random_range(0..50));
                open_braces += 1;
                vec![
                    "for".into(),
                    "(".into(),
                    "int".into(),
                    i.clone(),
                    "=".into(),
                    "0".into(),
                    ";".into(),
                    i.clone(),
                    "<".into(),
                    num(rng),
                    ";".into(),
                    i.clone(),
                    "=".into(),
                    i,
                    "+".into(),
                    "1".into(),
                    ")".into(),
                    "{".into(),
                ]
            }
        };
        lines.push(statement);
        if open_braces > 1 && rng.random_bool(0.4) {
            lines.push(vec!["}".into()]);
            open_braces -= 1;
        }
    }
    lines.push(vec!["return".into(), "0".into(), ";".into()]);
    while open_braces > 0 {
        lines.push(vec!["}".into()]);
        open_braces -= 1;
    }

    Program { includes, lines }
}

/// Write `files` (name, contents) into `dir`.
pub fn write_corpus(dir: &Path, files: &[(String, String)]) {
    for (name, contents) in files {
        fs::write(dir.join(name), contents).unwrap();
    }
}

/// The 30-file corpus with planted copy groups of sizes 8, 4, 3, and 2.
/// Returns (files, expected clusters as sorted id lists). Group members are
/// renderings of one program mutated only in comments, whitespace, and
/// directives; the remaining 13 files are unrelated programs.
pub fn planted_corpus<R: Rng>(rng: &mut R) -> (Vec<(String, String)>, Vec<Vec<String>>) {
    let group_sizes = [8usize, 4, 3, 2];
    let group_targets = [260usize, 330, 400, 210];
    let mut files = Vec::new();
    let mut clusters = Vec::new();
    let mut next_id = 1usize;

    for (&size, &target) in group_sizes.iter().zip(&group_targets) {
        let base = gen_program(rng, target);
        let mut members = Vec::new();
        for m in 0..size {
            let id = format!("s{next_id:02}");
            next_id += 1;
            let text = if m == 0 {
                base.render_canonical()
            } else {
                base.render_mutated(rng)
            };
            files.push((format!("{id}.cpp"), text));
            members.push(id);
        }
        clusters.push(members);
    }

    for i in 0..13 {
        let id = format!("s{next_id:02}");
        next_id += 1;
        let program = gen_program(rng, 150 + 28 * i);
        files.push((format!("{id}.cpp"), program.render_canonical()));
        clusters.push(vec![id]);
    }

    (files, clusters)
}
