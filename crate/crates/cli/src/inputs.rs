use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use cforge_core::cover::PatternSpec;
use cforge_core::groupcalc::GroupPresentation;
use cforge_core::knotlib::KnotExpr;

fn json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| anyhow!("{origin}: line {}, column {}: {e}", e.line(), e.column()))
}

fn looks_inline(s: &str) -> bool {
    let t = s.trim_start();
    t.starts_with('{') || t.starts_with('"') || t.starts_with('[')
}

/// Inline JSON, or a JSON file.
fn json_arg<T: DeserializeOwned>(flag: &str, arg: &str) -> Result<T> {
    if looks_inline(arg) {
        return json(arg, flag);
    }
    let path = Path::new(arg);
    if !path.exists() {
        bail!("{flag}: `{arg}` is neither inline JSON nor an existing file");
    }
    let text = fs::read_to_string(path).with_context(|| format!("{flag}: reading {}", path.display()))?;
    json(&text, &format!("{flag} {}", path.display()))
}

pub fn knot(flag: &str, arg: &str) -> Result<KnotExpr> {
    let k = match arg.trim() {
        "unknot" | "U" => KnotExpr::Unknot,
        _ => json_arg(flag, arg)?,
    };
    k.validate().with_context(|| format!("{flag}: invalid knot"))?;
    Ok(k)
}

pub fn pattern(flag: &str, arg: &str) -> Result<PatternSpec> {
    let p = match arg.strip_prefix("builtin:") {
        Some(name) => PatternSpec::builtin(name)
            .with_context(|| format!("{flag}: builtins are {}", PatternSpec::builtin_names().join(", ")))?,
        None => json_arg(flag, arg)?,
    };
    p.validate().with_context(|| format!("{flag}: invalid pattern"))?;
    Ok(p)
}

/// Text format, or JSON when the file starts with `{`.
pub fn presentation(path: &Path) -> Result<GroupPresentation> {
    let text = fs::read_to_string(path).with_context(|| format!("--in: reading {}", path.display()))?;
    let origin = format!("--in {}", path.display());
    if text.trim_start().starts_with('{') {
        return json(&text, &origin);
    }
    GroupPresentation::parse(&text).with_context(|| origin)
}

/// `m:k,m:k,...`
pub fn members(arg: &str) -> Result<Vec<(u32, u32)>> {
    arg.split(',')
        .map(|pair| {
            let (m, k) =
                pair.trim().split_once(':').ok_or_else(|| anyhow!("--members: `{pair}` is not of the form m:k"))?;
            let parse = |s: &str| s.trim().parse::<u32>().map_err(|_| anyhow!("--members: bad number `{s}`"));
            Ok((parse(m)?, parse(k)?))
        })
        .collect()
}

/// `p:q:k:copies`
pub fn sum_spec(arg: &str) -> Result<(u32, i64, u32, u32)> {
    let parts: Vec<&str> = arg.split(':').map(str::trim).collect();
    let [p, q, k, c] = parts[..] else {
        bail!("--sum: expected p:q:k:copies, got `{arg}`");
    };
    let bad = |s: &str| anyhow!("--sum: bad number `{s}`");
    Ok((
        p.parse().map_err(|_| bad(p))?,
        q.parse().map_err(|_| bad(q))?,
        k.parse().map_err(|_| bad(k))?,
        c.parse().map_err(|_| bad(c))?,
    ))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PatternRef {
    Uri(String),
    Inline(PatternSpec),
}

impl PatternRef {
    pub fn resolve(&self, origin: &str) -> Result<PatternSpec> {
        match self {
            PatternRef::Uri(s) => pattern(origin, s),
            PatternRef::Inline(p) => {
                p.validate().with_context(|| format!("{origin}: invalid pattern"))?;
                Ok(p.clone())
            }
        }
    }
}

/// One entry of a batch file.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Request {
    Maintorus {
        pattern: PatternRef,
        companion: KnotExpr,
        from: i64,
        to: i64,
        #[serde(default)]
        assume_h_negative: bool,
    },
    Notslice {
        pattern: PatternRef,
        companion: KnotExpr,
        n: i64,
    },
    Rankexpand {
        n: i64,
        p: u32,
        q: i64,
        members: Vec<(u32, u32)>,
    },
}

pub fn batch(path: &Path) -> Result<Vec<Request>> {
    let text = fs::read_to_string(path).with_context(|| format!("--in: reading {}", path.display()))?;
    json(&text, &format!("--in {}", path.display()))
}
