"""Regular languages of infinite ranked trees and their tree algebras."""
__version__ = "0.1.0"
