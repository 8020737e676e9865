package com.example.collections;

import java.util.Arrays;

/**
 * A growable list of ints kept in ascending order.
 */
public class SortedIntList implements IntContainer {

    private int[] values = new int[8];
    private int size = 0;

    /** Insert keeping the ascending order; duplicates are allowed. */
    public void insert(int value) {
        if (size == values.length) {
            values = Arrays.copyOf(values, size * 2);
        }
        int pos = indexFor(value);
        System.arraycopy(values, pos, values, pos + 1, size - pos);
        values[pos] = value;
        size++;
    }

    public int size() {
        return size;
    }

    /** Binary search for the insertion point of a value. */
    private int indexFor(int value) {
        int lo = 0;
        int hi = size;
        while (lo < hi) {
            int mid = (lo + hi) >>> 1;
            if (values[mid] < value) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        return lo;
    }

    protected enum GrowthPolicy {
        DOUBLE,
        FIXED;
    }
}
