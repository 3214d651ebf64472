pub mod carath;
pub mod ext;
pub mod order;
pub mod report;
pub mod suite;
pub mod measure;
pub mod twocat;
