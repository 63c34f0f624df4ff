// SPDX-License-Identifier: Apache-2.0

//! Sectioned `key = value` text with `#` comments.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: entry outside of any section")]
    NoSection { line: usize },
    #[error("line {line}: malformed section header")]
    BadHeader { line: usize },
    #[error("line {line}: expected `key = value`")]
    BadEntry { line: usize },
    #[error("line {line}: duplicate section [{name}]")]
    DuplicateSection { line: usize, name: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("input is not valid UTF-8")]
    Encoding,
}

/// Section name to its entries. Names and keys are case sensitive.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ini {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl Ini {
    pub fn section(&self, name: &str) -> Option<&BTreeMap<String, String>> {
        self.sections.get(name)
    }

    pub fn has_section(&self, name: &str) -> bool {
        self.sections.contains_key(name)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(String::as_str)
    }

    pub fn sections(&self) -> impl Iterator<Item = &str> {
        self.sections.keys().map(String::as_str)
    }
}

pub fn parse_bytes(data: &[u8]) -> Result<Ini, ParseError> {
    parse(std::str::from_utf8(data).map_err(|_| ParseError::Encoding)?)
}

pub fn parse(text: &str) -> Result<Ini, ParseError> {
    let mut ini = Ini::default();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or(ParseError::BadHeader { line })?.trim();
            if name.is_empty() || name.contains(['[', ']', '=']) {
                return Err(ParseError::BadHeader { line });
            }
            if ini.sections.insert(name.to_string(), BTreeMap::new()).is_some() {
                return Err(ParseError::DuplicateSection { line, name: name.to_string() });
            }
            current = Some(name.to_string());
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ParseError::BadEntry { line })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(ParseError::BadEntry { line });
        }
        let section = current.as_ref().ok_or(ParseError::NoSection { line })?;
        let entries = ini.sections.get_mut(section).expect("current section exists");
        if entries.insert(key.to_string(), value.to_string()).is_some() {
            return Err(ParseError::DuplicateKey { line, key: key.to_string() });
        }
    }
    Ok(ini)
}
