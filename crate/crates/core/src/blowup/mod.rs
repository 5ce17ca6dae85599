//! Blow-ups along aligned centers, the three transforms, and blow-up
//! sequences as trees of charts.

pub mod center;
pub mod json;
pub mod restrict;
pub mod step;
pub mod transform;
pub mod tree;

pub use center::Center;
pub use restrict::{center_images, image_in_root, merge_synchronized, pushforward_center, restrict_sequence, Localization};
pub use step::{blowup, empty_step, lift_component, BlowupStep};
pub use transform::{principal_transform, strict_transform, strict_transform_ideal, total_transform, MarkedIdeal};
pub use tree::ResolutionTree;
