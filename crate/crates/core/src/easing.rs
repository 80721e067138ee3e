use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Easing {
    Linear,
    #[default]
    EaseInOut,
    EaseIn,
    EaseOut,
    /// Holds the start value until the segment end.
    Hold,
}

impl Easing {
    /// Names accepted in scripts.
    pub const NAMED: [Easing; 4] = [Easing::Linear, Easing::EaseInOut, Easing::EaseIn, Easing::EaseOut];

    pub fn name(self) -> &'static str {
        match self {
            Easing::Linear => "linear",
            Easing::EaseInOut => "ease_in_out",
            Easing::EaseIn => "ease_in",
            Easing::EaseOut => "ease_out",
            Easing::Hold => "hold",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::NAMED.into_iter().find(|e| e.name() == s)
    }

    /// Maps segment-local time in [0,1] to progress in [0,1].
    pub fn apply(self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        match self {
            Easing::Linear => t,
            Easing::EaseInOut => t * t * (3.0 - 2.0 * t),
            Easing::EaseIn => t * t * t,
            Easing::EaseOut => {
                let u = 1.0 - t;
                1.0 - u * u * u
            }
            Easing::Hold => {
                if t >= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}
