//! `--config FILE`: `key=value` lines appended as flags the command line did
//! not already set.

use std::collections::BTreeSet;
use std::fs;

use clap::CommandFactory;

use crate::args::{Cli, SWITCHES};

fn config_path(args: &[String]) -> Result<Option<String>, String> {
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        if arg == "--config" {
            return iter
                .next()
                .cloned()
                .map(Some)
                .ok_or_else(|| "--config needs a file".to_string());
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            return Ok(Some(path.to_string()));
        }
    }
    Ok(None)
}

/// `(key, value)` pairs in file order; later duplicates replace earlier ones.
pub fn parse_entries(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut entries: Vec<(String, String)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value, got {line:?}", lineno + 1))?;
        let key = key.trim().trim_start_matches("--").to_string();
        let value = value.trim().to_string();
        if key.is_empty() {
            return Err(format!("config line {}: empty key", lineno + 1));
        }
        entries.retain(|(k, _)| *k != key);
        entries.push((key, value));
    }
    Ok(entries)
}

fn is_set(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("{flag}=");
    args.iter().any(|a| *a == flag || a.starts_with(&prefix))
}

fn switch_value(key: &str, value: &str) -> Result<bool, String> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(format!("config key {key} expects true or false, got {value:?}")),
    }
}

/// Merges `entries` into `args` for the subcommand named in `args`.
/// Keys no subcommand knows are errors; keys for other subcommands are skipped.
pub fn merge_entries(mut args: Vec<String>, entries: &[(String, String)]) -> Result<Vec<String>, String> {
    let cli = Cli::command();
    let Some(sub) = args
        .iter()
        .skip(1)
        .find_map(|a| cli.get_subcommands().find(|s| s.get_name() == a.as_str()))
    else {
        return Ok(args);
    };
    let longs = |cmd: &clap::Command| -> BTreeSet<String> {
        cmd.get_arguments()
            .filter_map(|a| a.get_long().map(str::to_string))
            .collect()
    };
    let accepted = longs(sub);
    let known: BTreeSet<String> = cli.get_subcommands().flat_map(longs).collect();

    for (key, value) in entries {
        if key == "config" {
            return Err("config files cannot include other config files".into());
        }
        if !known.contains(key) {
            return Err(format!("unknown config key {key:?}"));
        }
        if !accepted.contains(key) || is_set(&args, key) {
            continue;
        }
        if SWITCHES.contains(&key.as_str()) {
            if switch_value(key, value)? {
                args.push(format!("--{key}"));
            }
        } else {
            args.push(format!("--{key}={value}"));
        }
    }
    Ok(args)
}

pub fn merge(args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = config_path(&args)? else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    merge_entries(args, &parse_entries(&text)?)
}
