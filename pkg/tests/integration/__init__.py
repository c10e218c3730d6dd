"""Integration tests on the full public datasets.

They skip unless the dataset directories are configured:
- REPRANK_ML1M_DIR         - directory with ``ratings.dat`` and ``users.dat``
- REPRANK_BOOKCROSSING_DIR - directory with ``BX-Book-Ratings.csv`` and ``BX-Users.csv``
  plus ``continents.csv`` (or REPRANK_CONTINENT_TABLE)

``scripts/fetch-datasets.sh`` downloads all three.
"""
