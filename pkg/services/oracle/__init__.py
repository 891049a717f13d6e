from .service import SolveResult, oracle_count

__all__ = ['SolveResult', 'oracle_count']
