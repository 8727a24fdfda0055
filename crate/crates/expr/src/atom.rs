use std::fmt;

/// A generator of the expression field.
///
/// Coordinates `x_i`, exponentials `t_i = exp(x_i)` and constant parameters
/// are treated as algebraically independent indeterminates. `exp(k*x_i)` is
/// `t_i^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Coord(u16),
    Exp(u16),
    Param(u16),
}

/// Packed atom id used inside monomials. The low two bits hold the kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub(crate) u16);

const KIND_PARAM: u16 = 0;
const KIND_COORD: u16 = 1;
const KIND_EXP: u16 = 2;

impl Var {
    pub fn atom(self) -> Atom {
        let index = self.0 >> 2;
        match self.0 & 3 {
            KIND_PARAM => Atom::Param(index),
            KIND_COORD => Atom::Coord(index),
            KIND_EXP => Atom::Exp(index),
            _ => unreachable!("invalid variable kind"),
        }
    }
}

impl From<Atom> for Var {
    fn from(atom: Atom) -> Self {
        match atom {
            Atom::Param(i) => Var((i << 2) | KIND_PARAM),
            Atom::Coord(i) => Var((i << 2) | KIND_COORD),
            Atom::Exp(i) => Var((i << 2) | KIND_EXP),
        }
    }
}

/// Names of the coordinates and parameters an expression may refer to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    coords: Vec<String>,
    params: Vec<String>,
}

impl Context {
    pub fn new<S: AsRef<str>>(coords: &[S], params: &[S]) -> Self {
        Context {
            coords: coords.iter().map(|s| s.as_ref().to_string()).collect(),
            params: params.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    /// Coordinates named `x1..xn`, no parameters.
    pub fn numbered(n: usize) -> Self {
        let coords: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        Context {
            coords,
            params: Vec::new(),
        }
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Returns a copy with one more parameter appended.
    pub fn with_param(&self, name: &str) -> Self {
        let mut ctx = self.clone();
        ctx.params.push(name.to_string());
        ctx
    }

    pub fn coord_index(&self, name: &str) -> Option<u16> {
        self.coords.iter().position(|c| c == name).map(|i| i as u16)
    }

    pub fn param_index(&self, name: &str) -> Option<u16> {
        self.params.iter().position(|c| c == name).map(|i| i as u16)
    }

    /// All atoms available in this context, in a fixed order.
    pub fn atoms(&self) -> Vec<Atom> {
        let n = self.coords.len() as u16;
        let mut out: Vec<Atom> = (0..n).map(Atom::Coord).collect();
        out.extend((0..n).map(Atom::Exp));
        out.extend((0..self.params.len() as u16).map(Atom::Param));
        out
    }

    pub(crate) fn write_atom(&self, f: &mut fmt::Formatter<'_>, atom: Atom, exp: i64) -> fmt::Result {
        match atom {
            Atom::Exp(i) => {
                let name = self.coord_name(i);
                match exp {
                    1 => write!(f, "exp({name})"),
                    -1 => write!(f, "exp(-{name})"),
                    k => write!(f, "exp({k}*{name})"),
                }
            }
            Atom::Coord(i) => write_power(f, &self.coord_name(i), exp),
            Atom::Param(j) => {
                let name = self
                    .params
                    .get(j as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("p{}", j + 1));
                write_power(f, &name, exp)
            }
        }
    }

    fn coord_name(&self, i: u16) -> String {
        self.coords
            .get(i as usize)
            .cloned()
            .unwrap_or_else(|| format!("x{}", i + 1))
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, name: &str, exp: i64) -> fmt::Result {
    if exp == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{exp}")
    }
}
