"""
Contains the worker pool used for independent samples and sweep rows.
"""
from concurrent.futures import ThreadPoolExecutor


def ordered_map(function, items, threads=1):
    """
    Applies the function to every item, on worker threads when more than one
    is requested, and returns the results in input order.

    :param function: The function to apply.
    :param items: The items to apply it to.
    :param threads: The number of worker threads.
    :return: A list of results, one per item.
    """
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(function, items))
