//! `let name = word` definitions expanded token by token in word arguments.

use std::collections::HashMap;

use garside_core::{Error, Result};

#[derive(Debug, Default, Clone)]
pub struct Macros {
    defs: HashMap<String, Vec<String>>,
}

impl Macros {
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = Macros::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: &str| Error::Syntax {
                line: i + 1,
                column: 1,
                message: message.into(),
            };
            let rest = line.strip_prefix("let ").ok_or_else(|| syntax("expected `let name = word`"))?;
            let (name, body) = rest.split_once('=').ok_or_else(|| syntax("missing `=`"))?;
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(syntax("bad macro name"));
            }
            // earlier macros may be used in later bodies
            let tokens = m.expand_tokens(body);
            m.defs.insert(name.to_string(), tokens);
        }
        Ok(m)
    }

    fn expand_tokens(&self, text: &str) -> Vec<String> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            match self.defs.get(name) {
                Some(body) if inverse => out.extend(body.iter().rev().map(|t| invert(t))),
                Some(body) => out.extend(body.iter().cloned()),
                None => out.push(tok.to_string()),
            }
        }
        out
    }

    /// Replaces every macro token, honouring a trailing `^-1` on it.
    pub fn expand(&self, text: &str) -> String {
        self.expand_tokens(text).join(" ")
    }
}

fn invert(tok: &str) -> String {
    match tok.strip_suffix("^-1") {
        Some(n) => n.to_string(),
        None => format!("{tok}^-1"),
    }
}
