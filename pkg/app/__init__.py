"""Точная проверка q-деформированной W(2,2) как Hom-алгебры Ли над Q(q)."""

__version__ = "0.1.0"
