use std::path::Path;

use crate::codes::{
    concat_codes, load_code, make_binary_addressing_k1, make_binary_addressing_k2, make_bravyi_kitaev,
    make_checksum, make_h2_code, make_jordan_wigner, make_parity_code, make_segment_code, Code, Flavor,
};
use crate::error::{Error, Result};

/// Names accepted by [`builtin_code`].
pub const BUILTIN_NAMES: &[&str] = &[
    "jordan_wigner",
    "parity",
    "bravyi_kitaev",
    "checksum",
    "segment",
    "binary_addressing_k1",
    "binary_addressing_k2",
    "h2",
];

struct Part<'a> {
    name: &'a str,
    params: Vec<(&'a str, &'a str)>,
}

impl Part<'_> {
    fn param(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    fn usize_param(&self, key: &str) -> Result<Option<usize>> {
        self.param(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::Input(format!("{}: {key}={v:?} is not a number", self.name)))
            })
            .transpose()
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.params.iter().find(|(k, _)| *k != "modes" && !allowed.contains(k)) {
            Some((k, _)) => Err(Error::Input(format!("{} takes no parameter {k:?}", self.name))),
            None => Ok(()),
        }
    }
}

fn parse_part(text: &str) -> Result<Part<'_>> {
    let (name, rest) = text.split_once(':').unwrap_or((text, ""));
    let params = rest
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Input(format!("parameter {p:?} must look like key=value")))
        })
        .collect::<Result<_>>()?;
    Ok(Part {
        name: name.trim(),
        params,
    })
}

fn log2_exact(modes: usize, name: &str) -> Result<usize> {
    if modes >= 2 && modes.is_power_of_two() {
        Ok(modes.trailing_zeros() as usize)
    } else {
        Err(Error::Input(format!("{name} needs a power-of-two mode count, got {modes}")))
    }
}

fn build_part(part: &Part, modes: usize) -> Result<Code> {
    let need = |min: usize| {
        if modes < min {
            Err(Error::Input(format!("{} needs at least {min} modes, got {modes}", part.name)))
        } else {
            Ok(())
        }
    };
    match part.name {
        "jordan_wigner" | "jw" => {
            part.check_keys(&[])?;
            need(1)?;
            Ok(make_jordan_wigner(modes))
        }
        "parity" => {
            part.check_keys(&[])?;
            need(1)?;
            Ok(make_parity_code(modes))
        }
        "bravyi_kitaev" | "bk" => {
            part.check_keys(&[])?;
            need(1)?;
            Ok(make_bravyi_kitaev(modes))
        }
        "checksum" => {
            part.check_keys(&["flavor"])?;
            need(2)?;
            let flavor = match part.param("flavor").unwrap_or("even") {
                "even" => Flavor::Even,
                "odd" => Flavor::Odd,
                other => return Err(Error::Input(format!("checksum flavor {other:?} is not even/odd"))),
            };
            Ok(make_checksum(modes, flavor))
        }
        "segment" => {
            part.check_keys(&["k"])?;
            let k = part.usize_param("k")?.unwrap_or(2);
            if !(1..=8).contains(&k) {
                return Err(Error::Input(format!("segment k={k} outside 1..=8")));
            }
            let size = 2 * k + 1;
            if modes == 0 || !modes.is_multiple_of(size) {
                return Err(Error::Input(format!(
                    "segment code with k={k} needs a multiple of {size} modes, got {modes}"
                )));
            }
            Ok(make_segment_code(k, modes / size))
        }
        "binary_addressing_k1" => {
            part.check_keys(&[])?;
            Ok(make_binary_addressing_k1(log2_exact(modes, part.name)?))
        }
        "binary_addressing_k2" => {
            part.check_keys(&[])?;
            let r = log2_exact(modes, part.name)?;
            if r > 8 {
                return Err(Error::Input(format!("binary_addressing_k2 with r={r} is too large")));
            }
            Ok(make_binary_addressing_k2(r))
        }
        "h2" => {
            part.check_keys(&[])?;
            if modes != 4 {
                return Err(Error::Input(format!("h2 code has 4 modes, got {modes}")));
            }
            Ok(make_h2_code())
        }
        other => Err(Error::Input(format!(
            "unknown code {other:?}; expected one of {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

/// Builds a code from a name such as `checksum+segment:k=2` for a
/// Hamiltonian on `modes` modes. Parts joined by `+` are concatenated; a
/// part may fix its size with `modes=m`, and the remaining modes are split
/// evenly among the others.
pub fn builtin_code(spec: &str, modes: usize) -> Result<Code> {
    let parts = spec.split('+').map(parse_part).collect::<Result<Vec<_>>>()?;
    let mut fixed = 0;
    let mut free = 0;
    let mut sizes = Vec::with_capacity(parts.len());
    for p in &parts {
        let m = p.usize_param("modes")?;
        fixed += m.unwrap_or(0);
        free += usize::from(m.is_none());
        sizes.push(m);
    }
    let rest = modes
        .checked_sub(fixed)
        .ok_or_else(|| Error::Input(format!("code parts fix {fixed} modes but there are {modes}")))?;
    if free > 0 && rest % free != 0 {
        return Err(Error::Input(format!("{rest} modes cannot be split evenly over {free} code parts")));
    }
    if free == 0 && rest != 0 {
        return Err(Error::Input(format!("code parts cover {fixed} modes but there are {modes}")));
    }
    let share = rest.checked_div(free).unwrap_or(0);
    let mut code: Option<Code> = None;
    for (p, size) in parts.iter().zip(sizes) {
        let part = build_part(p, size.unwrap_or(share))?;
        code = Some(match code {
            None => part,
            Some(acc) => concat_codes(&acc, &part),
        });
    }
    code.ok_or_else(|| Error::Input("empty code name".into()))
}

/// A code-spec JSON file when `arg` names an existing file or ends in
/// `.json`, otherwise a builtin name.
pub fn resolve_code(arg: &str, modes: usize) -> Result<Code> {
    let path = Path::new(arg);
    let code = if path.is_file() || arg.ends_with(".json") {
        load_code(path)?
    } else {
        builtin_code(arg, modes)?
    };
    if code.modes() != modes {
        return Err(Error::Input(format!(
            "code {} covers {} modes but the Hamiltonian has {modes}",
            code.label(),
            code.modes()
        )));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_codes_have_the_expected_sizes() {
        for (name, qubits) in [
            ("jordan_wigner", 20),
            ("bravyi_kitaev", 20),
            ("checksum+checksum", 18),
            ("checksum+segment", 17),
            ("segment+segment", 16),
            ("segment:k=2+segment:k=2", 16),
        ] {
            let code = builtin_code(name, 20).unwrap();
            assert_eq!((code.modes(), code.qubits()), (20, qubits), "{name}");
        }
        assert_eq!(builtin_code("h2", 4).unwrap().qubits(), 2);
        assert_eq!(builtin_code("jw:modes=3+parity", 5).unwrap().qubits(), 5);
    }

    #[test]
    fn bad_names() {
        assert!(builtin_code("nope", 4).is_err());
        assert!(builtin_code("segment", 4).is_err());
        assert!(builtin_code("checksum:flavor=weird", 4).is_err());
        assert!(builtin_code("jw:colour=red", 4).is_err());
        assert!(builtin_code("jw+jw", 5).is_err());
        assert!(resolve_code("h2", 6).is_err());
    }
}
