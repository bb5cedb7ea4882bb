#!/usr/bin/env python3
'''
Plots the energies of a series.csv written by `thermoplate simulate`.

    python scripts/plot_series.py results/series.csv --save energies.png

Needs matplotlib (pip install thermoplate[plot]).
'''
import argparse
import csv

import matplotlib
import matplotlib.pyplot as plt
import numpy as np


ENERGY_COLUMNS = ( 'E1', 'E2', 'E3', 'X' )


def read_series(path):
    '''{column: numpy array} of a series.csv'''
    with open(path, encoding='utf-8', newline='') as fin:
        rows = list(csv.DictReader(fin))
    return { name: np.array([ float(r[name]) for r in rows ]) for name in rows[0] } if rows else {}


def main():
    parser = argparse.ArgumentParser(description='Plot the energy time series of a plate simulation.')
    parser.add_argument('series', help='path to series.csv')
    parser.add_argument('--save', metavar='FILE', help='write the figure instead of showing it')
    args = parser.parse_args()

    if args.save:
        matplotlib.use('Agg')
    data = read_series(args.series)
    if not data:
        parser.error('{} has no samples'.format(args.series))

    fig, ( top, bottom ) = plt.subplots(2, 1, sharex=True, figsize=( 8, 6 ))
    for name in ENERGY_COLUMNS:
        values = data[name]
        if np.any(values > 0):
            top.semilogy(data['t'], np.where(values > 0, values, np.nan), label=name)
    top.set_ylabel('energy')
    top.legend()
    bottom.plot(data['t'], data['ellipticity_min'])
    bottom.set_ylabel("min N'(z)")
    bottom.set_xlabel('t')
    fig.tight_layout()
    if args.save:
        fig.savefig(args.save)
    else:
        plt.show()


if __name__ == '__main__':
    main()
