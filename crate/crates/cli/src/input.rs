//! Locating and loading description files.

use std::path::{Path, PathBuf};

use mt_core::dsl::{elaborate, parse_spec, Decl, DeclKind, Env};

/// Bad invocations and invalid descriptions, reported with exit code 3.
#[derive(Debug)]
pub struct Usage(pub String);

impl From<std::io::Error> for Usage {
    fn from(e: std::io::Error) -> Usage {
        Usage(e.to_string())
    }
}

/// Why a file could not be used.
#[derive(Debug)]
pub enum Stop {
    Usage(Usage),
    /// a presentation in the file did not close within `budget`
    Truncated { file: String, budget: usize, reason: String },
}

impl From<Usage> for Stop {
    fn from(u: Usage) -> Stop {
        Stop::Usage(u)
    }
}

/// `MT_CORPUS`, or the corpus shipped next to the sources.
pub fn corpus_dir() -> PathBuf {
    match std::env::var_os("MT_CORPUS") {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus")),
    }
}

/// All `.spec` files under a corpus subdirectory, sorted by path.
pub fn corpus_files(sub: &str) -> Result<Vec<PathBuf>, Usage> {
    let dir = corpus_dir().join(sub);
    let mut out = Vec::new();
    let mut stack = vec![dir.clone()];
    while let Some(d) = stack.pop() {
        let entries = std::fs::read_dir(&d).map_err(|e| Usage(format!("{}: {e}", d.display())))?;
        for e in entries {
            let p = e?.path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|x| x == "spec") {
                out.push(p);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn resolve(name: &str) -> Result<PathBuf, Usage> {
    let direct = Path::new(name);
    if direct.is_file() {
        return Ok(direct.to_path_buf());
    }
    let wanted = if name.ends_with(".spec") { name.to_string() } else { format!("{name}.spec") };
    let found: Vec<PathBuf> = corpus_files("")?.into_iter().filter(|p| p.ends_with(&wanted)).collect();
    match found.as_slice() {
        [] => Err(Usage(format!("no such file: {name}"))),
        // prefer the shallowest match, so `arrow` means the category file
        _ => Ok(found.into_iter().min_by_key(|p| (p.components().count(), p.clone())).expect("nonempty")),
    }
}

/// An elaborated file, with an optional `:Name` selector.
pub struct Loaded {
    pub stem: String,
    pub env: Env,
    pub select: Option<String>,
}

impl Loaded {
    /// The selected name, or the last declaration of this kind.
    pub fn pick(&self, kind: &str) -> Result<String, Usage> {
        if let Some(s) = &self.select {
            if self.env.order.iter().any(|(n, k)| n == s && *k == kind) {
                return Ok(s.clone());
            }
            return Err(Usage(format!("{}: no {kind} named {s}", self.stem)));
        }
        self.env.last(kind).map(str::to_string).ok_or_else(|| Usage(format!("{}: no {kind} declared", self.stem)))
    }

    pub fn names(&self, kind: &str) -> Vec<String> {
        self.env.order.iter().filter(|(_, k)| *k == kind).map(|(n, _)| n.clone()).collect()
    }
}

pub fn load(arg: &str, budget: Option<usize>) -> Result<Loaded, Stop> {
    let (file, select) = match arg.rsplit_once(':') {
        Some((f, s)) if !s.contains('/') && !s.is_empty() => (f, Some(s.to_string())),
        _ => (arg, None),
    };
    let path = resolve(file)?;
    load_path(&path, budget).map(|mut l| {
        l.select = select;
        l
    })
}

pub fn load_path(path: &Path, budget: Option<usize>) -> Result<Loaded, Stop> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let mut doc = parse_spec(&text).map_err(|e| Usage(format!("{}:{e}", path.display())))?;
    if let Some(b) = budget {
        doc.decls.retain(|d| !matches!(d.kind, DeclKind::Budget(_)));
        doc.decls.insert(0, Decl { name: String::new(), kind: DeclKind::Budget(b), line: 0 });
    }
    let effective = doc
        .decls
        .iter()
        .filter_map(|d| match d.kind {
            DeclKind::Budget(b) => Some(b),
            _ => None,
        })
        .last()
        .unwrap_or(6);
    let env = elaborate(&doc).map_err(|e| match e {
        mt_core::error::Error::Truncated(reason) => Stop::Truncated { file: path.display().to_string(), budget: effective, reason },
        e => Stop::Usage(Usage(format!("{}: {e}", path.display()))),
    })?;
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(Loaded { stem, env, select: None })
}
