//! Reading matroid files and one-based set/state arguments.

use std::fs;

use matx_core::{parse_matroid, ElementSet, Error, Matroid, Result};

pub fn read_matroid(path: &str) -> Result<Matroid> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}")))?;
    parse_matroid(&text)
}

/// `1,2,3`, `1 2 3` or compact `123`; `-` is the empty set.
pub fn parse_set(text: &str, ground_size: usize) -> Result<ElementSet> {
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return Ok(ElementSet::EMPTY);
    }
    let tokens: Vec<&str> = if text.contains([',', ' ']) {
        text.split([',', ' ']).filter(|t| !t.is_empty()).collect()
    } else {
        text.split("").filter(|t| !t.is_empty()).collect()
    };
    let mut set = ElementSet::EMPTY;
    for token in tokens {
        let e: usize = token
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad element {token:?} in {text:?}")))?;
        if e == 0 || e > ground_size {
            return Err(Error::ElementOutOfRange {
                element: e.wrapping_sub(1),
                ground_size,
            });
        }
        set = set.with(e - 1);
    }
    Ok(set)
}

/// Entries separated by `|`, e.g. `12|34` or `1,2|3,4`.
pub fn parse_state(text: &str, ground_size: usize) -> Result<Vec<ElementSet>> {
    text.split('|').map(|part| parse_set(part, ground_size)).collect()
}

pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad number {t:?} in {text:?}")))
        })
        .collect()
}

/// Compact form when every element is a single digit.
pub fn show_set(set: ElementSet, ground_size: usize) -> String {
    if set.is_empty() {
        return "-".into();
    }
    let sep = if ground_size >= 10 { "," } else { "" };
    set.to_one_based()
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn show_state(state: &[ElementSet], ground_size: usize) -> String {
    state
        .iter()
        .map(|&b| show_set(b, ground_size))
        .collect::<Vec<_>>()
        .join("|")
}
