//! Session input: a catalog ring name or a JSON session file, plus module expressions.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use modcx_core::fixtures::{builtin_spec_with_prime, catalog_names, random_module};
use modcx_core::poly::Polynomial;
use modcx_core::{syzygy, AlgebraSpec, ArtinAlgebra, Error, ModuleRep, PresentationSpec, Result};
use serde::{Deserialize, Serialize};

/// The on-disk session document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    pub field: u32,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub cap: usize,
    #[serde(default)]
    pub ci_codim: Option<usize>,
    #[serde(default)]
    pub modules: BTreeMap<String, PresentationSpec>,
}

pub struct Session {
    pub name: String,
    pub spec: AlgebraSpec,
    pub algebra: Arc<ArtinAlgebra>,
    pub modules: BTreeMap<String, PresentationSpec>,
}

impl Session {
    /// `ring` is a catalog name or a path to a session file.
    pub fn load(ring: &str, prime: u32) -> Result<Session> {
        let path = Path::new(ring);
        if !catalog_names().contains(&ring) && (path.exists() || ring.ends_with(".json")) {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read session file {ring}: {e}")))?;
            let file: SessionFile = serde_json::from_str(&text)
                .map_err(|e| Error::Input(format!("{ring}: line {}, column {}: {e}", e.line(), e.column())))?;
            return Session::from_file(ring, file);
        }
        let spec = builtin_spec_with_prime(ring, prime)?;
        let algebra = Arc::new(ArtinAlgebra::build(&spec)?);
        Ok(Session { name: ring.to_string(), spec, algebra, modules: BTreeMap::new() })
    }

    pub fn from_file(name: &str, file: SessionFile) -> Result<Session> {
        // parse each relation separately so errors name the offending one
        for (i, rel) in file.relations.iter().enumerate() {
            Polynomial::parse(rel, &file.vars).map_err(|e| Error::Input(format!("relation {} ({rel:?}): {e}", i + 1)))?;
        }
        let spec = AlgebraSpec {
            prime: file.field,
            vars: file.vars,
            relations: file.relations,
            cap: file.cap,
            ci_codim: file.ci_codim,
        };
        let algebra = Arc::new(ArtinAlgebra::build(&spec)?);
        Ok(Session { name: name.to_string(), spec, algebra, modules: file.modules })
    }

    /// Realizes a module expression; see [`parse_module`].
    pub fn module(&self, expr: &str) -> Result<NamedModule> {
        let mut p = Parser { src: expr, pos: 0, session: self };
        let m = p.sum()?;
        if p.pos != expr.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(m)
    }
}

/// A realized module with a canonical description used in cache keys.
pub struct NamedModule {
    pub name: String,
    pub canonical: String,
    pub module: ModuleRep,
}

/// Grammar:
///
/// ```text
/// sum   := term ('+' term)*
/// term  := atom ('^v')*
/// atom  := 'k' | 'E' | 'R' ('^' n)? | 'syz' n '(' sum ')' | 'rand_' seed '_' t 'x' s
///        | session module name | '(' sum ')'
/// ```
struct Parser<'a> {
    src: &'a str,
    pos: usize,
    session: &'a Session,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { column: self.pos + 1, message: format!("module expression {:?}: {msg}", self.src) }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let n = self.rest()[..len].parse().map_err(|_| self.error("number out of range"))?;
        self.pos += len;
        Ok(n)
    }

    fn ident(&mut self) -> &str {
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        let s = &self.src[self.pos..self.pos + len];
        self.pos += len;
        s
    }

    fn sum(&mut self) -> Result<NamedModule> {
        let mut acc = self.term()?;
        while self.eat("+") {
            let next = self.term()?;
            acc = NamedModule {
                name: format!("{}+{}", acc.name, next.name),
                canonical: format!("sum({},{})", acc.canonical, next.canonical),
                module: acc.module.direct_sum(&next.module)?,
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NamedModule> {
        let mut m = self.atom()?;
        while self.eat("^v") {
            m = NamedModule {
                name: format!("{}^v", m.name),
                canonical: format!("dual({})", m.canonical),
                module: m.module.matlis_dual(),
            };
        }
        Ok(m)
    }

    fn atom(&mut self) -> Result<NamedModule> {
        let alg = &self.session.algebra;
        if self.eat("(") {
            let mut m = self.sum()?;
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            if m.name.contains('+') {
                m.name = format!("({})", m.name);
            }
            return Ok(m);
        }
        let start = self.pos;
        let word = self.ident().to_string();
        if self.session.modules.contains_key(&word) {
            let spec = &self.session.modules[&word];
            let p = spec.resolve(&word, alg)?;
            let canonical = format!("pres({})", serde_json::to_string(&p.relations).expect("serializable"));
            let canonical = format!("{canonical}:{}", p.gens);
            return Ok(NamedModule { name: word, canonical, module: ModuleRep::realize(alg, &p)? });
        }
        match word.as_str() {
            "k" => Ok(named("k", ModuleRep::residue_field(alg))),
            "E" => Ok(named("E", ModuleRep::injective_hull(alg))),
            "R" => {
                if self.rest().starts_with("^v") {
                    return Ok(named("R", ModuleRep::free(alg, 1)));
                }
                if self.eat("^") {
                    let n = self.number()? as usize;
                    return Ok(named(&format!("R^{n}"), ModuleRep::free(alg, n)));
                }
                Ok(named("R", ModuleRep::free(alg, 1)))
            }
            w if w.starts_with("syz") && self.rest().starts_with('(') => {
                let j: usize = w[3..].parse().map_err(|_| self.error("expected syz<j>(...)"))?;
                self.eat("(");
                let inner = self.sum()?;
                if !self.eat(")") {
                    return Err(self.error("expected ')'"));
                }
                Ok(NamedModule {
                    name: format!("syz{j}({})", inner.name),
                    canonical: format!("syz{j}({})", inner.canonical),
                    module: syzygy(&inner.module, j),
                })
            }
            w if w.starts_with("rand_") => {
                let parts: Vec<&str> = w[5..].split(['_', 'x']).collect();
                let nums: Option<Vec<u64>> = parts.iter().map(|s| s.parse().ok()).collect();
                match nums.as_deref() {
                    Some(&[seed, t, s]) => {
                        let p = random_module(alg, seed, t as usize, s as usize)?;
                        Ok(named(&p.name.clone(), ModuleRep::realize(alg, &p)?))
                    }
                    _ => Err(self.error("expected rand_<seed>_<gens>x<rels>")),
                }
            }
            "" => Err(self.error("expected a module")),
            _ => {
                self.pos = start;
                Err(self.error(&format!("unknown module '{word}'")))
            }
        }
    }
}

fn named(name: &str, module: ModuleRep) -> NamedModule {
    NamedModule { name: name.to_string(), canonical: name.to_string(), module }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let s = Session::load("m2_e2", 101).unwrap();
        assert_eq!(s.module("k").unwrap().module.length(), 1);
        assert_eq!(s.module("R^2").unwrap().module.length(), 6);
        assert_eq!(s.module("R^v").unwrap().module.length(), 3);
        assert_eq!(s.module("k+R").unwrap().module.length(), 4);
        assert_eq!(s.module("syz1(k)").unwrap().module.length(), 2);
        assert_eq!(s.module("(k+E)^v").unwrap().name, "(k+E)^v");
        assert!(s.module("rand_5_2x3").unwrap().module.min_gens() == 2);
        assert!(matches!(s.module("k+"), Err(Error::Parse { .. })));
        assert!(matches!(s.module("Q"), Err(Error::Parse { .. })));
    }

    #[test]
    fn session_files() {
        let file: SessionFile = serde_json::from_str(
            r#"{"field": 101, "vars": ["x","y"], "relations": ["x^2","y^2"], "cap": 3,
                "modules": {"M": {"gens": 1, "relations": [["x"]]}}}"#,
        )
        .unwrap();
        let s = Session::from_file("ci", file).unwrap();
        assert_eq!(s.algebra.length(), 4);
        assert_eq!(s.module("M").unwrap().module.length(), 2);
        let bad: SessionFile =
            serde_json::from_str(r#"{"field": 101, "vars": ["x","y"], "relations": ["x+*y"], "cap": 3}"#).unwrap();
        let err = Session::from_file("bad", bad).err().unwrap().to_string();
        assert!(err.contains("relation 1"), "{err}");
    }
}
