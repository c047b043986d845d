pub mod chi;
pub mod correspond;
pub mod series;
pub mod strata;
pub mod tangent;
pub mod verify;
pub mod wallcross;
pub mod weights;
pub mod young;
