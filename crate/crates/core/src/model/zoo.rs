//! Built-in example models.

use super::document::ModelDocument;
use super::parse::parse;
use crate::ortho::StructureClass;

/// Classification flags recorded for an orthoposet in the zoo.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expected {
    pub boolean: bool,
    pub ortholattice: bool,
    pub omp: bool,
    pub oml: bool,
}

impl Expected {
    pub fn matches(&self, c: &StructureClass) -> bool {
        self.boolean == c.is_boolean
            && self.ortholattice == c.is_ortholattice
            && self.omp == c.is_omp
            && self.oml == c.is_oml
    }
}

const BOOLEAN: Expected = Expected {
    boolean: true,
    ortholattice: true,
    omp: true,
    oml: true,
};

const OML: Expected = Expected {
    boolean: false,
    ortholattice: true,
    omp: true,
    oml: true,
};

#[derive(Debug, Clone)]
pub struct ZooModel {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub source: String,
    /// `None` for representation systems.
    pub expected: Option<Expected>,
}

impl ZooModel {
    pub fn document(&self) -> ModelDocument {
        parse(&self.source).expect("zoo models parse")
    }
}

const BOOLEAN_2: &str = "\
orthoposet boolean_2 {
  elements 0 1 ;
  covers 0<1 ;
  ortho 0:1
}
";

const BOOLEAN_4: &str = "\
orthoposet boolean_4 {
  elements 0 a b 1 ;
  covers 0<a 0<b a<1 b<1 ;
  ortho 0:1 a:b
}
";

const BOOLEAN_8: &str = "\
orthoposet boolean_8 {
  elements 0 a b c ab ac bc 1 ;
  covers 0<a 0<b 0<c a<ab a<ac b<ab b<bc c<ac c<bc ab<1 ac<1 bc<1 ;
  ortho 0:1 a:bc b:ac c:ab
}
";

const MO2: &str = "\
orthoposet MO2 {
  elements 0 a a' b b' 1 ;
  covers 0<a 0<a' 0<b 0<b' a<1 a'<1 b<1 b'<1 ;
  ortho 0:1 a:a' b:b'
}
";

const MO3: &str = "\
orthoposet MO3 {
  elements 0 a a' b b' c c' 1 ;
  covers 0<a 0<a' 0<b 0<b' 0<c 0<c' a<1 a'<1 b<1 b'<1 c<1 c'<1 ;
  ortho 0:1 a:a' b:b' c:c'
}
";

const HEXAGON: &str = "\
orthoposet hexagon_O6 {
  elements 0 a b b' a' 1 ;
  covers 0<a a<b b<1 0<b' b'<a' a'<1 ;
  ortho 0:1 a:a' b:b'
}
";

// Two observers X and Y watch a box; each poset has an information-less top,
// `NotSeen`, `Seen`, and two halves below `Seen`. Only the informative arrows
// are listed and every other entry defaults to the target's top.
const FIREFLY: &str = "\
repsys firefly {
  view X = poset {
    elements Top NotSeen Seen Left Right ;
    covers NotSeen<Top Seen<Top Left<Seen Right<Seen
  } ;
  view Y = poset {
    elements Top NotSeen Seen Up Down ;
    covers NotSeen<Top Seen<Top Up<Seen Down<Seen
  } ;
  map Y<X { Left->Seen Right->Down ; * -> Top } ;
  map X<Y { Down->Seen ; * -> Top }
}
";

/// A Greechie diagram with `k` three-atom blocks in a loop, neighbouring
/// blocks sharing one atom. Block `t` has atoms `x{t}`, `m{t}`, `x{t+1}`.
pub fn greechie_cycle(k: usize) -> String {
    let x = |t: usize| format!("x{}", t % k + 1);
    let m = |t: usize| format!("m{}", t + 1);
    let blocks: Vec<[String; 3]> = (0..k).map(|t| [x(t), m(t), x(t + 1)]).collect();
    let atoms: Vec<String> = (0..k).map(x).chain((0..k).map(m)).collect();

    let mut elements = vec!["0".to_owned()];
    elements.extend(atoms.iter().cloned());
    elements.extend(atoms.iter().map(|a| format!("{a}'")));
    elements.push("1".to_owned());

    let mut covers: Vec<String> = atoms.iter().map(|a| format!("0<{a}")).collect();
    for p in &atoms {
        for q in &atoms {
            // p lies under q' when they are distinct atoms of a common block
            if p != q && blocks.iter().any(|b| b.contains(p) && b.contains(q)) {
                covers.push(format!("{p}<{q}'"));
            }
        }
    }
    covers.extend(atoms.iter().map(|a| format!("{a}'<1")));

    let mut ortho = vec!["0:1".to_owned()];
    ortho.extend(atoms.iter().map(|a| format!("{a}:{a}'")));

    format!(
        "orthoposet greechie_cycle_{k} {{\n  elements {} ;\n  covers {} ;\n  ortho {}\n}}\n",
        elements.join(" "),
        covers.join(" "),
        ortho.join(" ")
    )
}

pub fn zoo() -> Vec<ZooModel> {
    let fixed = |name, aliases, source: &str, expected| ZooModel {
        name,
        aliases,
        source: source.to_owned(),
        expected,
    };
    vec![
        fixed("boolean_2", &[], BOOLEAN_2, Some(BOOLEAN)),
        fixed("boolean_4", &["2^2"], BOOLEAN_4, Some(BOOLEAN)),
        fixed("boolean_8", &["2^3"], BOOLEAN_8, Some(BOOLEAN)),
        fixed("MO2", &[], MO2, Some(OML)),
        fixed("MO3", &[], MO3, Some(OML)),
        fixed(
            "hexagon_O6",
            &["O6"],
            HEXAGON,
            Some(Expected {
                boolean: false,
                ortholattice: true,
                omp: false,
                oml: false,
            }),
        ),
        ZooModel {
            name: "greechie_cycle_4",
            aliases: &[],
            source: greechie_cycle(4),
            expected: Some(Expected {
                boolean: false,
                ortholattice: false,
                omp: true,
                oml: false,
            }),
        },
        ZooModel {
            name: "greechie_cycle_5",
            aliases: &[],
            source: greechie_cycle(5),
            expected: Some(OML),
        },
        fixed("firefly", &[], FIREFLY, None),
    ]
}

/// Looks a model up by name or alias.
pub fn zoo_model(name: &str) -> Option<ZooModel> {
    zoo()
        .into_iter()
        .find(|m| m.name == name || m.aliases.contains(&name))
}
