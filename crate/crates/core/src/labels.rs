use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// The four dual-rail Bell states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BellLabel {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [BellLabel::PsiPlus, BellLabel::PsiMinus, BellLabel::PhiPlus, BellLabel::PhiMinus];

    pub fn name(self) -> &'static str {
        match self {
            BellLabel::PsiPlus => "psi-plus",
            BellLabel::PsiMinus => "psi-minus",
            BellLabel::PhiPlus => "phi-plus",
            BellLabel::PhiMinus => "phi-minus",
        }
    }
}

/// The three two-mode states left to discriminate in one arm:
/// `α = |11⟩`, `β± = (|20⟩ ± |02⟩)/√2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArmLabel {
    Alpha,
    BetaPlus,
    BetaMinus,
}

impl ArmLabel {
    pub const ALL: [ArmLabel; 3] = [ArmLabel::Alpha, ArmLabel::BetaPlus, ArmLabel::BetaMinus];

    pub fn name(self) -> &'static str {
        match self {
            ArmLabel::Alpha => "alpha",
            ArmLabel::BetaPlus => "beta-plus",
            ArmLabel::BetaMinus => "beta-minus",
        }
    }

    /// The Bell state whose arm input this label identifies.
    pub fn bell(self) -> BellLabel {
        match self {
            ArmLabel::Alpha => BellLabel::PsiPlus,
            ArmLabel::BetaPlus => BellLabel::PhiPlus,
            ArmLabel::BetaMinus => BellLabel::PhiMinus,
        }
    }
}

/// Candidate label in a discrimination problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Bell(BellLabel),
    Arm(ArmLabel),
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::Bell(b) => b.name(),
            Label::Arm(a) => a.name(),
        }
    }
}

impl From<BellLabel> for Label {
    fn from(b: BellLabel) -> Self {
        Label::Bell(b)
    }
}

impl From<ArmLabel> for Label {
    fn from(a: ArmLabel) -> Self {
        Label::Arm(a)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for ArmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl Serialize for BellLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Label {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        BellLabel::ALL
            .iter()
            .map(|&b| Label::Bell(b))
            .chain(ArmLabel::ALL.iter().map(|&a| Label::Arm(a)))
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown label {s:?}"))
    }
}

/// Relative sign in `β±`, `Ξ±`, `Γ±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn beta(self) -> ArmLabel {
        match self {
            Sign::Plus => ArmLabel::BetaPlus,
            Sign::Minus => ArmLabel::BetaMinus,
        }
    }
}
