use std::sync::OnceLock;

use regex::Regex;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    /// Exactly one action after an `action` header.
    Single,
    /// Comma-separated action list after an `actions` header.
    Sequence,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("no action header found")]
    NoHeader,
    #[error("no vocabulary action after the header")]
    NoAction,
    #[error("empty action vocabulary")]
    EmptyVocabulary,
}

fn header_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    // `# action`, `### Actions`, `**Action:** Up`, `Actions: Up, Left` ...
    RE.get_or_init(|| {
        Regex::new(r"(?im)^[ \t]*(?:#{1,6}[ \t]*)?(?:\*\*|__)?actions?\b(?:\*\*|__)?[ \t]*:?(?:\*\*|__)?[ \t]*(.*)$")
            .expect("valid regex")
    })
}

fn section_break_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?m)^[ \t]*#").expect("valid regex"))
}

fn clean_token(raw: &str) -> &str {
    raw.trim().trim_matches(|c: char| {
        matches!(c, '`' | '\'' | '"' | '*' | '.' | '!' | '[' | ']' | '(' | ')' | '-' | ':' | ';')
    })
}

fn lookup(vocab: &[&'static str], token: &str) -> Option<&'static str> {
    let token = clean_token(token);
    vocab.iter().copied().find(|v| v.eq_ignore_ascii_case(token))
}

/// Extracts actions from raw agent output.
///
/// The header is located tolerantly (markdown `#` marks, bold and a trailing
/// colon are optional, case is ignored) and the last header wins. Tokens
/// must equal a vocabulary entry case-insensitively; the canonical
/// vocabulary spelling is returned.
pub fn parse_actions(text: &str, vocab: &[&'static str], mode: ParseMode) -> Result<Vec<&'static str>, ParseError> {
    if vocab.is_empty() {
        return Err(ParseError::EmptyVocabulary);
    }
    let caps = header_re().captures_iter(text).last().ok_or(ParseError::NoHeader)?;
    let inline = caps.get(1).map_or("", |m| m.as_str());
    let body_start = caps.get(0).expect("whole match").end();
    let rest = &text[body_start..];
    let rest = match section_break_re().find(rest) {
        Some(m) => &rest[..m.start()],
        None => rest,
    };
    match mode {
        ParseMode::Single => {
            let line = std::iter::once(inline)
                .chain(rest.lines())
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or(ParseError::NoAction)?;
            lookup(vocab, line).map(|a| vec![a]).ok_or(ParseError::NoAction)
        }
        ParseMode::Sequence => {
            let actions: Vec<&'static str> = std::iter::once(inline)
                .chain(rest.lines())
                .flat_map(|l| l.split([',', ';', ' ', '\t']))
                .filter_map(|tok| lookup(vocab, tok))
                .collect();
            if actions.is_empty() {
                Err(ParseError::NoAction)
            } else {
                Ok(actions)
            }
        }
    }
}

/// Fenced code blocks keyed by language tag (`html`, `css`, `javascript`).
/// Later blocks of the same language replace earlier ones.
pub fn parse_code_blocks(text: &str) -> Vec<(String, String)> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| Regex::new(r"(?s)```([A-Za-z]*)[ \t]*\n(.*?)```").expect("valid regex"));
    let mut out: Vec<(String, String)> = Vec::new();
    for caps in re.captures_iter(text) {
        let lang = match caps[1].to_ascii_lowercase().as_str() {
            "js" | "javascript" | "javascipt" => "javascript".to_string(),
            other => other.to_string(),
        };
        let body = caps[2].to_string();
        match out.iter_mut().find(|(l, _)| *l == lang) {
            Some(slot) => slot.1 = body,
            None => out.push((lang, body)),
        }
    }
    out
}
