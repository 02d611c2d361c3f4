//! Line-based scheme and script files.
//!
//! Scheme file: `ins <id> <word>`, `del <id> <word>`, `axiom <word>`, where
//! `<word>` is letters, `eps`, or `@path` to a matrix file (relative to the
//! scheme file). Script file: `ins <k> <rule-id>` or `del <k> <rule-id>`.

use std::fmt::Write as _;
use std::path::Path;

use super::{EngineError, Rule, RuleKind, Scheme, ScriptStep, System};
use crate::format::{parse_word_literal, strip_comment, FormatError};

fn syntax(line: usize, msg: impl Into<String>) -> EngineError {
    EngineError::Parse { line, msg: msg.into() }
}

pub fn parse_scheme(text: &str, base: Option<&Path>) -> Result<System, EngineError> {
    let mut ins = Vec::new();
    let mut del = Vec::new();
    let mut axioms = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [kw @ ("ins" | "del"), id, lit] => {
                let body = parse_word_literal(lit, base)?;
                let kind = if *kw == "ins" { RuleKind::Insert } else { RuleKind::Delete };
                let rule = Rule::new(*id, kind, body).map_err(|e| syntax(no + 1, e.to_string()))?;
                if kind == RuleKind::Insert {
                    ins.push(rule);
                } else {
                    del.push(rule);
                }
            }
            ["axiom", lit] => axioms.push(parse_word_literal(lit, base)?),
            _ => return Err(syntax(no + 1, format!("expected `ins|del <id> <word>` or `axiom <word>`, got {line:?}"))),
        }
    }
    Ok(System {
        scheme: Scheme::new(ins, del)?,
        axioms,
    })
}

pub fn read_scheme_file(path: &Path) -> Result<System, EngineError> {
    let text = read(path)?;
    parse_scheme(&text, path.parent())
}

pub fn parse_script(text: &str) -> Result<Vec<ScriptStep>, EngineError> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [kw, site, id] = fields.as_slice() else {
            return Err(syntax(no + 1, format!("expected `ins|del <k> <rule-id>`, got {line:?}")));
        };
        let site: usize = site
            .parse()
            .map_err(|_| syntax(no + 1, format!("site {site:?} is not a non-negative integer")))?;
        out.push(match *kw {
            "ins" => ScriptStep::ins(site, id),
            "del" => ScriptStep::del(site, id),
            other => return Err(syntax(no + 1, format!("unknown operation {other:?}"))),
        });
    }
    Ok(out)
}

pub fn read_script_file(path: &Path) -> Result<Vec<ScriptStep>, EngineError> {
    parse_script(&read(path)?)
}

pub fn render_script(script: &[ScriptStep]) -> String {
    let mut out = String::new();
    for s in script {
        let _ = writeln!(out, "{s}");
    }
    out
}

fn read(path: &Path) -> Result<String, EngineError> {
    std::fs::read_to_string(path).map_err(|source| {
        EngineError::Format(FormatError::Io {
            path: path.display().to_string(),
            source,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::render_matrix;
    use crate::testutil::base;
    use crate::word::RelationalWord;

    #[test]
    fn scheme_file() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("w.rw"), render_matrix(&base())).unwrap();
        let text = "# toy\nins I aba\ndel D aa\naxiom @w.rw\naxiom eps\n";
        std::fs::write(dir.path().join("s.scheme"), text).unwrap();
        let sys = read_scheme_file(&dir.path().join("s.scheme")).unwrap();
        assert_eq!(sys.scheme.ins_rules()[0].body(), &RelationalWord::from_string("aba"));
        assert_eq!(sys.scheme.rule("D").unwrap().kind, RuleKind::Delete);
        assert_eq!(sys.axioms, vec![base(), RelationalWord::empty()]);
    }

    #[test]
    fn scheme_errors() {
        assert!(matches!(parse_scheme("ins I\n", None), Err(EngineError::Parse { line: 1, .. })));
        assert!(matches!(parse_scheme("\nins I eps\n", None), Err(EngineError::Parse { line: 2, .. })));
        assert!(matches!(parse_scheme("ins I a\ndel I b\n", None), Err(EngineError::DuplicateRule(_))));
    }

    #[test]
    fn scripts_round_trip() {
        let script = parse_script("ins 0 I\n# comment\ndel 3 D  \n").unwrap();
        assert_eq!(script, vec![ScriptStep::ins(0, "I"), ScriptStep::del(3, "D")]);
        assert_eq!(parse_script(&render_script(&script)).unwrap(), script);
        assert!(matches!(parse_script("ins -1 I"), Err(EngineError::Parse { line: 1, .. })));
        assert!(matches!(parse_script("swap 1 I"), Err(EngineError::Parse { .. })));
    }
}
